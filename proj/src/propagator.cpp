#include "qtrans/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qtrans/fft.hpp"
#include "qtrans/hermite.hpp"
#include "qtrans/kernels.hpp"
#include "qtrans/modes.hpp"

namespace qtrans {

namespace {

void check_state(const WaveFunction& psi, double norm_tol, double t)
{
    const double n = psi.norm();
    if (!std::isfinite(n))
        throw NumericalError("propagate: NaN amplitudes at t = " + std::to_string(t));
    if (std::abs(n - 1.0) > norm_tol)
        throw NumericalError("propagate: norm drift " + std::to_string(std::abs(n - 1.0)) +
                             " exceeds tolerance at t = " + std::to_string(t));
    if (psi.boundary_magnitude() > 1e-6)
        throw NumericalError("propagate: wavefunction reached the grid boundary at t = " +
                             std::to_string(t) + " (grid too small)");
}

}  // namespace

WaveFunction displaced_eigenstate(int n, double x0, double v, const SpatialGrid& grid,
                                  const PhysicalParams& params)
{
    WaveFunction psi;
    psi.grid = grid;
    psi.amp.resize(grid.n);
    const double boost = params.mass * v / params.hbar;
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        psi.amp[j] = std::polar(oscillator_eigenfunction(n, x - x0, params), boost * x);
    }
    psi.normalize();
    return psi;
}

WaveFunction trap_frame_transform(const WaveFunction& psi, const Trajectory& traj, double t)
{
    const double q0 = traj.q_0.value(t);
    const double v0 = traj.q_0.velocity(t);
    const auto& p = traj.params;

    WaveFunction out = psi;
    Fft fft(out.grid.n);
    const auto k = fft_wavenumbers(out.grid.n, out.grid.dx);

    // Shift by -q0: multiply the spectrum by exp(+i k q0).
    fft.forward(out.amp);
    for (std::size_t j = 0; j < out.amp.size(); ++j)
        out.amp[j] *= std::polar(1.0, k[j] * q0);
    fft.inverse(out.amp);

    const double boost = -p.mass * v0 / p.hbar;
    for (std::size_t j = 0; j < out.amp.size(); ++j)
        out.amp[j] *= std::polar(1.0, boost * out.grid.x(j));
    return out;
}

WaveFunction trap_frame_inverse(const WaveFunction& psi, const Trajectory& traj, double t)
{
    const double q0 = traj.q_0.value(t);
    const double v0 = traj.q_0.velocity(t);
    const auto& p = traj.params;

    WaveFunction out = psi;
    const double boost = p.mass * v0 / p.hbar;
    for (std::size_t j = 0; j < out.amp.size(); ++j)
        out.amp[j] *= std::polar(1.0, boost * out.grid.x(j));

    Fft fft(out.grid.n);
    const auto k = fft_wavenumbers(out.grid.n, out.grid.dx);
    fft.forward(out.amp);
    for (std::size_t j = 0; j < out.amp.size(); ++j)
        out.amp[j] *= std::polar(1.0, -k[j] * q0);
    fft.inverse(out.amp);
    return out;
}

std::vector<double> mode_populations(const WaveFunction& psi, const Trajectory& traj, double t,
                                     int n_max)
{
    std::vector<double> pops(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        TransportMode mode{n, traj};
        const WaveFunction phi = mode_wavefunction(mode, t, psi.grid);
        const double f = fidelity(psi, phi);
        pops[static_cast<std::size_t>(n)] = f * f;
    }
    return pops;
}

namespace {

// Observable extraction shared by the sampling path. Keeps one scratch
// spectrum buffer to avoid reallocating per sample.
struct ObservableProbe {
    const PotentialModel& pot;
    const Fft& fft;
    const std::vector<double>& k;
    const PhysicalParams& params;
    std::vector<std::complex<double>> scratch;

    struct Moments {
        double x1, x2, p1, p2;
    };

    Moments moments(const WaveFunction& psi)
    {
        Moments m{};
        double n2 = 0.0;
        for (std::size_t j = 0; j < psi.amp.size(); ++j) {
            const double w = std::norm(psi.amp[j]);
            const double x = psi.grid.x(j);
            m.x1 += x * w;
            m.x2 += x * x * w;
            n2 += w;
        }
        m.x1 /= n2;
        m.x2 /= n2;

        scratch = psi.amp;
        fft.forward(scratch);
        double kn2 = 0.0;
        for (std::size_t j = 0; j < scratch.size(); ++j) {
            const double w = std::norm(scratch[j]);
            const double hk = params.hbar * k[j];
            m.p1 += hk * w;
            m.p2 += hk * hk * w;
            kn2 += w;
        }
        m.p1 /= kn2;
        m.p2 /= kn2;
        return m;
    }

    double energy(const WaveFunction& psi, const Moments& m, double t)
    {
        double e = 0.0;
        if (includes_kinetic(pot)) e += m.p2 / (2.0 * params.mass);
        const double drive = momentum_drive(pot, t);
        if (drive != 0.0) e += drive * m.p1;
        double vbar = 0.0, n2 = 0.0;
        for (std::size_t j = 0; j < psi.amp.size(); ++j) {
            const double w = std::norm(psi.amp[j]);
            vbar += potential_value(pot, psi.grid.x(j), t) * w;
            n2 += w;
        }
        return e + vbar / n2;
    }

    double invariant(const WaveFunction& psi, const Moments& m, double t)
    {
        const Trajectory& traj = trajectory_of(pot);
        const double w0 = params.omega0;
        switch (invariant_form(pot)) {
            case InvariantForm::HarmonicQc: {
                const double qc = traj.q_c.value(t);
                const double vc = traj.q_c.velocity(t);
                return (m.p2 - 2.0 * params.mass * vc * m.p1 +
                        params.mass * params.mass * vc * vc) /
                           (2.0 * params.mass) +
                       0.5 * params.mass * w0 * w0 * (m.x2 - 2.0 * qc * m.x1 + qc * qc);
            }
            case InvariantForm::DisplacedHarmonic: {
                const double q0 = traj.q_0.value(t);
                return m.p2 / (2.0 * params.mass) +
                       0.5 * params.mass * w0 * w0 * (m.x2 - 2.0 * q0 * m.x1 + q0 * q0);
            }
            case InvariantForm::CompensatedU: {
                const double q0 = traj.q_0.value(t);
                const double v0 = traj.q_0.velocity(t);
                const auto& trap = std::get<CompensatedTrap>(pot);
                double ubar = 0.0, n2 = 0.0;
                for (std::size_t j = 0; j < psi.amp.size(); ++j) {
                    const double w = std::norm(psi.amp[j]);
                    ubar += trap.profile.u(psi.grid.x(j) - q0) * w;
                    n2 += w;
                }
                return (m.p2 - 2.0 * params.mass * v0 * m.p1 +
                        params.mass * params.mass * v0 * v0) /
                           (2.0 * params.mass) +
                       ubar / n2;
            }
        }
        return std::numeric_limits<double>::quiet_NaN();
    }
};

}  // namespace

SimulationResult propagate(const WaveFunction& psi0, const PotentialModel& pot, double t_f,
                           const NumericsConfig& numerics, const PropagateOptions& opts)
{
    numerics.validate();
    if (!(t_f > 0.0)) throw std::invalid_argument("propagate: t_f must be > 0");
    const Trajectory& traj = trajectory_of(pot);
    const PhysicalParams& params = traj.params;
    if (params.gravity != 0.0 && !std::holds_alternative<MovingHarmonic>(pot))
        throw std::invalid_argument(
            "propagate: gravity is only defined for the moving harmonic trap");
    const SpatialGrid& grid = psi0.grid;
    if (grid.n != numerics.grid_points)
        throw std::invalid_argument("propagate: psi0 grid size differs from numerics.grid_points");

    std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(t_f / numerics.time_step(params) - 1e-9));
    n_steps += n_steps % 2;  // even => one boundary exactly at tf/2
    n_steps = std::max<std::size_t>(n_steps, 2);
    const double dt = t_f / static_cast<double>(n_steps);

    Fft fft(grid.n);
    const auto k = fft_wavenumbers(grid.n, grid.dx);

    // Momentum factor: time-independent unless the model carries a p-drive.
    const bool static_momentum_factor = !std::holds_alternative<TransitionlessMomentum>(pot);
    std::vector<std::complex<double>> kinetic_phase(grid.n);
    const double kin_coef = includes_kinetic(pot) ? params.hbar * dt / (2.0 * params.mass) : 0.0;
    if (static_momentum_factor)
        for (std::size_t j = 0; j < grid.n; ++j)
            kinetic_phase[j] = std::polar(1.0, -kin_coef * k[j] * k[j]);

    WaveFunction psi = psi0;
    const auto& kops = kernels::ops();

    // Observable sampling lands on step boundaries closest to the uniform
    // sample times.
    const std::size_t samples = std::max<std::size_t>(opts.sample_count, 2);
    std::vector<std::size_t> sample_steps(samples);
    for (std::size_t s = 0; s < samples; ++s)
        sample_steps[s] = static_cast<std::size_t>(
            std::llround(static_cast<double>(n_steps) * static_cast<double>(s) /
                         static_cast<double>(samples - 1)));

    SimulationResult result;
    result.steps = n_steps;

    ObservableProbe probe{pot, fft, k, params, {}};

    // Trap-frame reference for compensated runs: ground state of U.
    const bool compensated = std::holds_alternative<CompensatedTrap>(pot);
    WaveFunction u_ground;
    double u_ground_energy = 0.0;
    if (compensated) {
        const auto& trap = std::get<CompensatedTrap>(pot);
        auto gs = ground_state(trap.profile.u, grid, params);
        u_ground = std::move(gs.psi);
        u_ground_energy = gs.energy;
    }

    auto record_sample = [&](double t, const WaveFunction& state) {
        if (opts.record_series) {
            auto m = probe.moments(state);
            result.series.t.push_back(t);
            result.series.q_mean.push_back(m.x1);
            result.series.p_mean.push_back(m.p1);
            result.series.energy.push_back(probe.energy(state, m, t));
            result.series.invariant.push_back(probe.invariant(state, m, t));
            double fid;
            if (compensated) {
                fid = fidelity(trap_frame_transform(state, traj, t), u_ground);
            } else {
                TransportMode mode{opts.target_n, traj};
                fid = fidelity(state, mode_wavefunction(mode, t, grid));
            }
            result.series.fidelity.push_back(fid);
        }
        if (opts.sample_hook) opts.sample_hook(t, state);
    };

    record_sample(0.0, psi);
    std::size_t next_sample = 1;
    while (next_sample < samples && sample_steps[next_sample] == 0) ++next_sample;

    std::vector<std::complex<double>> pot_phase(grid.n);
    std::vector<std::complex<double>> momentum_phase;
    const bool has_potential =
        !std::holds_alternative<TransitionlessMomentum>(pot) ||
        std::get<TransitionlessMomentum>(pot).include_h0;

    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t_mid = (static_cast<double>(i) + 0.5) * dt;

        if (has_potential) {
            const double scale = -0.5 * dt / params.hbar;
            for (std::size_t j = 0; j < grid.n; ++j)
                pot_phase[j] = std::polar(1.0, scale * potential_value(pot, grid.x(j), t_mid));
            kops.cmul_inplace(psi.amp.data(), pot_phase.data(), grid.n);
        }

        fft.forward(psi.amp);
        if (static_momentum_factor) {
            kops.cmul_inplace(psi.amp.data(), kinetic_phase.data(), grid.n);
        } else {
            const double drive = momentum_drive(pot, t_mid);
            momentum_phase.resize(grid.n);
            for (std::size_t j = 0; j < grid.n; ++j)
                momentum_phase[j] = std::polar(1.0, -(kin_coef * k[j] + drive * dt) * k[j]);
            kops.cmul_inplace(psi.amp.data(), momentum_phase.data(), grid.n);
        }
        fft.inverse(psi.amp);

        if (has_potential) kops.cmul_inplace(psi.amp.data(), pot_phase.data(), grid.n);

        const std::size_t done = i + 1;
        if (next_sample < samples && done == sample_steps[next_sample]) {
            const double t = static_cast<double>(done) * dt;
            check_state(psi, numerics.tolerances.norm, t);
            record_sample(t, psi);
            while (next_sample < samples && sample_steps[next_sample] <= done) ++next_sample;
        }
    }

    check_state(psi, numerics.tolerances.norm, t_f);
    result.final_norm_error = std::abs(psi.norm() - 1.0);

    // Final-trap targets: trap parked at q0(tf), moving at the commanded
    // final velocity (zero except for launching protocols).
    const double q_end = traj.q_0.value(t_f);
    const double v_end = traj.spec.v_final;
    // With gravity the final trap's minimum sits g/w^2 below the trap center
    // (which is exactly q_c(tf) for the gravity-variant protocols).
    const double w2 = params.omega0 * params.omega0;
    const double q_center = q_end - params.gravity / w2;
    auto final_energy = [&](const WaveFunction& state) {
        const auto m = probe.moments(state);
        double vbar = 0.0, n2 = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double w = std::norm(state.amp[j]);
            vbar += final_potential_value(pot, grid.x(j)) * w;
            n2 += w;
        }
        return m.p2 / (2.0 * params.mass) + vbar / n2;
    };
    if (compensated) {
        WaveFunction target = trap_frame_inverse(u_ground, traj, t_f);
        result.final_fidelity = fidelity(psi, target);
        result.excitation_energy = final_energy(psi) - u_ground_energy;
        // Populations in an arbitrary trap's eigenbasis are not defined here.
    } else {
        WaveFunction target =
            displaced_eigenstate(opts.target_n, q_center, v_end, grid, params);
        result.final_fidelity = fidelity(psi, target);

        if (opts.compute_populations) {
            result.populations.resize(static_cast<std::size_t>(opts.n_max) + 1);
            for (int n = 0; n <= opts.n_max; ++n) {
                const WaveFunction basis = displaced_eigenstate(n, q_center, v_end, grid, params);
                const double f = fidelity(psi, basis);
                result.populations[static_cast<std::size_t>(n)] = f * f;
            }
        }

        if (std::holds_alternative<QuarticExpanded>(pot)) {
            // The truncated quartic is unbounded below; a ground level of the
            // final trap is not well defined, so no excitation is reported.
            result.excitation_energy = std::numeric_limits<double>::quiet_NaN();
        } else {
            double ground;
            if (std::holds_alternative<GaussianBeamLongitudinal>(pot)) {
                auto gs = ground_state(
                    [&](double x) { return final_potential_value(pot, x); }, grid, params);
                ground = gs.energy;
            } else {
                ground = 0.5 * params.hbar * params.omega0 + params.mass * params.gravity * q_end -
                         0.5 * params.mass * params.gravity * params.gravity / w2;
            }
            result.excitation_energy = final_energy(psi) - ground;
        }
    }

    return result;
}

GroundStateResult ground_state(const std::function<double(double)>& potential,
                               const SpatialGrid& grid, const PhysicalParams& params,
                               double energy_tol, int max_iterations)
{
    std::vector<double> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = potential(grid.x(j));
    return ground_state(v, grid, params, energy_tol, max_iterations);
}

GroundStateResult ground_state(const std::vector<double>& potential_on_grid,
                               const SpatialGrid& grid, const PhysicalParams& params,
                               double energy_tol, int max_iterations)
{
    if (potential_on_grid.size() != grid.n)
        throw std::invalid_argument("ground_state: potential sample size mismatch");

    Fft fft(grid.n);
    const auto k = fft_wavenumbers(grid.n, grid.dx);

    // Start from a sigma0-width Gaussian in the deepest well.
    const std::size_t j_min =
        static_cast<std::size_t>(std::min_element(potential_on_grid.begin(),
                                                  potential_on_grid.end()) -
                                 potential_on_grid.begin());
    const double x0 = grid.x(j_min);
    const double s0 = params.sigma0();
    WaveFunction psi;
    psi.grid = grid;
    psi.amp.resize(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double d = (grid.x(j) - x0) / (2.0 * s0);
        psi.amp[j] = std::exp(-d * d);
    }
    psi.normalize();

    auto energy_of = [&](const WaveFunction& state) {
        std::vector<std::complex<double>> spec = state.amp;
        fft.forward(spec);
        double kin = 0.0, kn2 = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double w = std::norm(spec[j]);
            kin += params.hbar * params.hbar * k[j] * k[j] / (2.0 * params.mass) * w;
            kn2 += w;
        }
        double pot = 0.0, n2 = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double w = std::norm(state.amp[j]);
            pot += potential_on_grid[j] * w;
            n2 += w;
        }
        return kin / kn2 + pot / n2;
    };

    // Coarse-to-fine imaginary time steps: the coarse stages sweep out the
    // excited components, the final one removes the splitting bias.
    const double dtau_stages[] = {0.1 / params.omega0, 0.02 / params.omega0,
                                  0.004 / params.omega0};
    int iterations = 0;
    double energy = energy_of(psi);
    const auto& kops = kernels::ops();

    for (double dtau : dtau_stages) {
        std::vector<std::complex<double>> pot_factor(grid.n), kin_factor(grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) {
            pot_factor[j] = std::exp(-0.5 * dtau / params.hbar * potential_on_grid[j]);
            kin_factor[j] = std::exp(-params.hbar * k[j] * k[j] * dtau / (2.0 * params.mass));
        }
        bool converged = false;
        while (!converged) {
            if (++iterations > max_iterations)
                throw NumericalError("ground_state: no convergence after " +
                                     std::to_string(max_iterations) + " iterations");
            kops.cmul_inplace(psi.amp.data(), pot_factor.data(), grid.n);
            fft.forward(psi.amp);
            kops.cmul_inplace(psi.amp.data(), kin_factor.data(), grid.n);
            fft.inverse(psi.amp);
            kops.cmul_inplace(psi.amp.data(), pot_factor.data(), grid.n);
            psi.normalize();

            const double e = energy_of(psi);
            const double scale = std::max(params.hbar * params.omega0, std::abs(e));
            if (std::abs(e - energy) < energy_tol * scale) converged = true;
            energy = e;
        }
    }

    return {std::move(psi), energy, iterations};
}

}  // namespace qtrans
