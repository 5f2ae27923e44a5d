#include "qtrans/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtrans/fft.hpp"
#include "qtrans/kernels.hpp"

namespace qtrans {

SpatialGrid make_grid(const Trajectory& traj, const NumericsConfig& numerics)
{
    numerics.validate();
    const double tf = traj.spec.duration;
    double lo = 0.0, hi = 0.0;
    constexpr int kSamples = 512;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = tf * static_cast<double>(i) / kSamples;
        for (double v : {traj.q_c.value(t), traj.q_0.value(t)}) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double pad = numerics.grid_padding * traj.params.sigma0();
    SpatialGrid grid;
    grid.n = numerics.grid_points;
    grid.x_min = lo - pad;
    grid.dx = (hi + pad - grid.x_min) / static_cast<double>(grid.n);
    return grid;
}

double WaveFunction::norm() const
{
    return std::sqrt(kernels::ops().norm2(amp.data(), amp.size()) * grid.dx);
}

void WaveFunction::normalize()
{
    const double n = norm();
    if (!(n > 0.0)) throw std::runtime_error("wavefunction: cannot normalize zero state");
    kernels::ops().cscale_inplace(amp.data(), {1.0 / n, 0.0}, amp.size());
}

double WaveFunction::boundary_magnitude() const
{
    if (amp.empty()) return 0.0;
    return std::max(std::abs(amp.front()), std::abs(amp.back()));
}

double WaveFunction::position_expectation(const std::vector<double>& g) const
{
    if (g.size() != amp.size())
        throw std::invalid_argument("position_expectation: sample size mismatch");
    const double w = kernels::ops().weighted_norm2(amp.data(), g.data(), amp.size());
    const double n2 = kernels::ops().norm2(amp.data(), amp.size());
    return w / n2;
}

double WaveFunction::mean_position() const
{
    double w = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < amp.size(); ++j) {
        const double p = std::norm(amp[j]);
        w += grid.x(j) * p;
        n2 += p;
    }
    return w / n2;
}

double WaveFunction::mean_position_squared() const
{
    double w = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < amp.size(); ++j) {
        const double p = std::norm(amp[j]);
        const double x = grid.x(j);
        w += x * x * p;
        n2 += p;
    }
    return w / n2;
}

MomentumMoments momentum_moments(const WaveFunction& psi, const Fft& fft,
                                 const PhysicalParams& params)
{
    if (fft.size() != psi.amp.size())
        throw std::invalid_argument("momentum_moments: FFT size mismatch");
    std::vector<std::complex<double>> spec = psi.amp;
    fft.forward(spec);
    const auto k = fft_wavenumbers(psi.grid.n, psi.grid.dx);
    double w1 = 0.0, w2 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double p = std::norm(spec[j]);
        const double hk = params.hbar * k[j];
        w1 += hk * p;
        w2 += hk * hk * p;
        n2 += p;
    }
    return {w1 / n2, w2 / n2};
}

double fidelity(const WaveFunction& psi, const WaveFunction& phi)
{
    return std::abs(overlap(psi, phi));
}

std::complex<double> overlap(const WaveFunction& psi, const WaveFunction& phi)
{
    if (!(psi.grid == phi.grid)) throw std::invalid_argument("overlap: grid mismatch");
    return kernels::ops().cdot(phi.amp.data(), psi.amp.data(), psi.amp.size()) * psi.grid.dx;
}

}  // namespace qtrans
