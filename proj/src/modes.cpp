#include "qtrans/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "qtrans/errors.hpp"
#include "qtrans/fft.hpp"
#include "qtrans/hermite.hpp"
#include "qtrans/quadrature.hpp"

namespace qtrans {

double TransportMode::eigenvalue() const { return oscillator_energy(n, traj.params); }

double lr_phase(const TransportMode& mode, double t, double quad_tol)
{
    const auto& p = mode.params();
    if (t == 0.0) return 0.0;
    const double kinetic_integral = integrate(
        [&](double tp) {
            const double v = mode.traj.q_c.velocity(tp);
            return 0.5 * p.mass * v * v;
        },
        0.0, t, quad_tol);
    return -(mode.eigenvalue() * t + kinetic_integral) / p.hbar;
}

WaveFunction mode_wavefunction(const TransportMode& mode, double t, const SpatialGrid& grid,
                               double norm_tol)
{
    const auto& p = mode.params();
    const double qc = mode.traj.q_c.value(t);
    const double vc = mode.traj.q_c.velocity(t);
    const double alpha_n = lr_phase(mode, t);
    const double boost = p.mass * vc / p.hbar;

    WaveFunction psi;
    psi.grid = grid;
    psi.amp.resize(grid.n);
    const std::complex<double> global = std::polar(1.0, alpha_n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double envelope = oscillator_eigenfunction(mode.n, x - qc, p);
        psi.amp[j] = global * std::polar(envelope, boost * x);
    }

    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > norm_tol)
        throw NumericalError("mode_wavefunction: grid truncates the state (norm deficit " +
                                 std::to_string(std::abs(norm - 1.0)) + ")");
    return psi;
}

double invariant_expectation(const WaveFunction& psi, const Trajectory& traj, double t)
{
    const auto& p = traj.params;
    const double qc = traj.q_c.value(t);
    const double vc = traj.q_c.velocity(t);

    Fft fft(psi.grid.n);
    const auto pm = momentum_moments(psi, fft, p);
    const double x1 = psi.mean_position();
    const double x2 = psi.mean_position_squared();

    const double kinetic_part =
        (pm.mean_squared - 2.0 * p.mass * vc * pm.mean + p.mass * p.mass * vc * vc) /
        (2.0 * p.mass);
    const double potential_part =
        0.5 * p.mass * p.omega0 * p.omega0 * (x2 - 2.0 * qc * x1 + qc * qc);
    return kinetic_part + potential_part;
}

EnergyReport energy_report(const TransportMode& mode, std::size_t samples, double quad_tol)
{
    if (samples < 2) throw std::invalid_argument("energy_report: need at least two samples");
    const auto& p = mode.params();
    const auto& traj = mode.traj;
    const double tf = traj.spec.duration;
    const double internal = mode.eigenvalue();
    const double w2 = p.omega0 * p.omega0;

    auto ep_at = [&](double t) {
        const double disp = traj.q_c.value(t) - traj.q_0.value(t);
        return 0.5 * p.mass * w2 * disp * disp;
    };
    auto kin_at = [&](double t) {
        const double v = traj.q_c.velocity(t);
        return 0.5 * p.mass * v * v;
    };
    auto spread_at = [&](double t) {
        return std::sqrt(2.0 * p.hbar * p.omega0 * (mode.n + 0.5) * (ep_at(t) + kin_at(t)));
    };

    EnergyReport report;
    report.n = mode.n;
    report.times.resize(samples);
    report.total.resize(samples);
    report.potential.resize(samples);
    report.kinetic.resize(samples);
    report.spread.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = tf * static_cast<double>(i) / static_cast<double>(samples - 1);
        report.times[i] = t;
        report.potential[i] = ep_at(t);
        report.kinetic[i] = kin_at(t);
        report.total[i] = internal + report.potential[i] + report.kinetic[i];
        report.spread[i] = spread_at(t);
    }

    // The bang-bang trap acceleration switches at tf/2; keep the quadrature
    // panels away from the jump in q_c - q_0's second derivative.
    const std::vector<double> segments = traj.kind == TrajectoryKind::BangBang
                                             ? std::vector<double>{0.0, 0.5 * tf, tf}
                                             : std::vector<double>{0.0, tf};
    report.ep_avg = integrate_segmented(ep_at, segments, quad_tol) / tf;
    report.kinetic_avg = integrate_segmented(kin_at, segments, quad_tol) / tf;
    report.spread_avg = integrate_segmented(spread_at, segments, quad_tol) / tf;
    report.total_avg = internal + report.ep_avg + report.kinetic_avg;

    report.ep_avg_accel_route =
        p.mass / (2.0 * tf * w2) *
        integrate_segmented(
            [&](double t) {
                const double acc = traj.q_c.acceleration(t) + p.gravity;
                return acc * acc;
            },
            segments, quad_tol);
    return report;
}

BoundsReport bounds_report(const TransportSpec& spec, const PhysicalParams& params, int n)
{
    params.validate();
    spec.validate();
    if (n < 0) throw std::invalid_argument("bounds_report: n must be >= 0");
    const double d = std::abs(spec.distance);
    const double tf = spec.duration;
    const double w = params.omega0;
    const double m = params.mass;
    const double hbar = params.hbar;

    BoundsReport b;
    b.euler_lagrange_ep = 6.0 * m * d * d / (tf * tf * tf * tf * w * w);
    b.mvt_velocity = d / tf;
    b.mvt_acceleration = 2.0 * d / (tf * tf);
    b.instantaneous_ep = 2.0 * m * std::pow(d / (w * tf * tf), 2);
    b.aa_avg_spread = hbar * std::acos(std::exp(-m * w * d * d / (4.0 * hbar))) / tf;
    b.variance_avg = 12.0 * hbar * (n + 0.5) * m * d * d / (w * tf * tf * tf * tf);
    return b;
}

}  // namespace qtrans
