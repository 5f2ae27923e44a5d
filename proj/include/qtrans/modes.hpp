#pragma once

#include <vector>

#include "qtrans/params.hpp"
#include "qtrans/trajectories.hpp"
#include "qtrans/wavefunction.hpp"

namespace qtrans {

/// The n-th invariant eigenstate riding a transport trajectory: a displaced,
/// velocity-boosted oscillator eigenstate with the accumulated phase.
struct TransportMode {
    int n = 0;
    Trajectory traj;

    const PhysicalParams& params() const { return traj.params; }

    /// Invariant eigenvalue (n + 1/2) hbar omega0.
    double eigenvalue() const;
};

/// Accumulated phase alpha_n(t) = -(E_n t + int_0^t m qc_dot^2/2 dt')/hbar.
double lr_phase(const TransportMode& mode, double t, double quad_tol = 1e-12);

/// exp(i alpha_n) exp(i m qc_dot q / hbar) phi_n(q - q_c) sampled on `grid`.
/// Throws when the grid truncates the state (norm deficit beyond tol).
WaveFunction mode_wavefunction(const TransportMode& mode, double t, const SpatialGrid& grid,
                               double norm_tol = 1e-10);

/// <psi| I |psi> with I = (p - m qc_dot)^2/2m + m omega0^2 (q - q_c)^2 / 2.
double invariant_expectation(const WaveFunction& psi, const Trajectory& traj, double t);

/// Instantaneous energies along a harmonic transport mode (closed forms)
/// plus their time averages. `ep_avg_accel_route` evaluates the averaged
/// sloshing energy through the acceleration integral m/(2 tf w^2) int qc''^2;
/// it must agree with the direct quadrature of E_P(t).
struct EnergyReport {
    int n = 0;
    std::vector<double> times;
    std::vector<double> total;        // <H>(t)
    std::vector<double> potential;    // E_P(t) = m w^2 (q_c - q_0)^2 / 2
    std::vector<double> kinetic;      // m qc_dot^2 / 2
    std::vector<double> spread;       // Delta H(t)
    double total_avg = 0.0;
    double ep_avg = 0.0;
    double ep_avg_accel_route = 0.0;
    double kinetic_avg = 0.0;
    double spread_avg = 0.0;
};

EnergyReport energy_report(const TransportMode& mode, std::size_t samples = 513,
                           double quad_tol = 1e-10);

/// Lower bounds of the transient-excitation analysis. All of them depend
/// only on (d, tf, n) and the physical constants.
struct BoundsReport {
    double euler_lagrange_ep = 0.0;        // 6 m d^2 / (tf^4 w^2), bounds avg E_P
    double mvt_velocity = 0.0;             // d / tf, bounds max |x_dot|
    double mvt_acceleration = 0.0;         // 2 d / tf^2, bounds max |x_ddot|
    double instantaneous_ep = 0.0;         // 2 m (d / (w tf^2))^2, bounds max E_P
    double aa_avg_spread = 0.0;            // hbar acos(exp(-m w d^2/4 hbar))/tf
    double variance_avg = 0.0;             // 12 hbar (n+1/2) m d^2 / (w tf^4)
};

/// Note: `variance_avg` bounds the time average of the variance (Delta H)^2,
/// not the average of the standard deviation.
BoundsReport bounds_report(const TransportSpec& spec, const PhysicalParams& params, int n);

}  // namespace qtrans
