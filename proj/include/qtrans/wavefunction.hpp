#pragma once

#include <complex>
#include <vector>

#include "qtrans/params.hpp"
#include "qtrans/trajectories.hpp"

namespace qtrans {

/// Uniform periodic spatial grid; x_j = x_min + j*dx, domain length n*dx.
struct SpatialGrid {
    double x_min = 0.0;
    double dx = 0.0;
    std::size_t n = 0;

    double x(std::size_t j) const { return x_min + dx * static_cast<double>(j); }
    double length() const { return dx * static_cast<double>(n); }

    bool operator==(const SpatialGrid&) const = default;
};

/// Builds a grid covering every position visited by q_c and q_0 over the
/// protocol, padded by `padding` ground-state widths on both sides.
SpatialGrid make_grid(const Trajectory& traj, const NumericsConfig& numerics);

/// Complex amplitudes on a SpatialGrid, normalized to sum |psi|^2 dx = 1.
struct WaveFunction {
    SpatialGrid grid;
    std::vector<std::complex<double>> amp;

    double norm() const;
    void normalize();

    /// max(|psi(first)|, |psi(last)|); should stay below the leakage
    /// tolerance so the periodic transform never wraps amplitude around.
    double boundary_magnitude() const;

    /// <g(x)> for g sampled on the grid; normalizes by the current norm.
    double position_expectation(const std::vector<double>& g) const;

    double mean_position() const;
    double mean_position_squared() const;
};

struct MomentumMoments {
    double mean = 0.0;
    double mean_squared = 0.0;
};

class Fft;

/// <p> and <p^2> via the Fourier representation.
MomentumMoments momentum_moments(const WaveFunction& psi, const Fft& fft,
                                 const PhysicalParams& params);

/// Global-phase-insensitive overlap |<phi|psi>|. Grids must match exactly.
double fidelity(const WaveFunction& psi, const WaveFunction& phi);

/// Complex overlap <phi|psi> (kept for perturbation-theory comparisons).
std::complex<double> overlap(const WaveFunction& psi, const WaveFunction& phi);

}  // namespace qtrans
