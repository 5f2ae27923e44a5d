#pragma once

#include <functional>
#include <vector>

#include "qtrans/errors.hpp"
#include "qtrans/params.hpp"
#include "qtrans/potentials.hpp"
#include "qtrans/wavefunction.hpp"

namespace qtrans {

struct ObservableSeries {
    std::vector<double> t;
    std::vector<double> q_mean;
    std::vector<double> p_mean;
    std::vector<double> energy;
    std::vector<double> invariant;
    std::vector<double> fidelity;
};

struct SimulationResult {
    double final_fidelity = 0.0;
    std::vector<double> populations;  // final static-trap basis, n = 0..n_max
    double excitation_energy = 0.0;   // <H(tf)> above the final trap's ground level
    double final_norm_error = 0.0;
    std::size_t steps = 0;
    ObservableSeries series;
};

struct PropagateOptions {
    int target_n = 0;             // which final eigenstate counts as success
    int n_max = 16;               // population report cutoff
    std::size_t sample_count = 65;  // observable samples including both endpoints
    bool record_series = true;
    bool compute_populations = true;

    /// Called at every sample point with the current state (after the
    /// observables were recorded). Used by tests to probe mid-run states.
    std::function<void(double, const WaveFunction&)> sample_hook;
};

/// Strang-split spectral propagation of psi0 under the model's Hamiltonian
/// from t = 0 to tf: half step in the position-diagonal terms, full step in
/// the momentum-diagonal terms, half step in position, with time-dependent
/// coefficients frozen at the midpoint of each step. The step count is
/// rounded up to an even number so one step boundary always lands on tf/2
/// (where the bang-bang acceleration switches).
///
/// Fidelity semantics: against the boosted displaced target eigenstate of
/// the final trap (the transport aim), except for CompensatedTrap where the
/// series reports trap-frame fidelity to the ground state of U.
SimulationResult propagate(const WaveFunction& psi0, const PotentialModel& pot, double t_f,
                           const NumericsConfig& numerics, const PropagateOptions& opts = {});

struct GroundStateResult {
    WaveFunction psi;
    double energy = 0.0;
    int iterations = 0;
};

/// Ground state of H = p^2/2m + U(x) by imaginary-time split stepping with
/// per-step renormalization and a decreasing time-step schedule; converged
/// when the energy change per step falls below energy_tol * max(hw, |E|).
GroundStateResult ground_state(const std::vector<double>& potential_on_grid,
                               const SpatialGrid& grid, const PhysicalParams& params,
                               double energy_tol = 1e-12, int max_iterations = 50000);

/// Convenience overload sampling a trap profile shape centered at `center`.
GroundStateResult ground_state(const std::function<double(double)>& potential,
                               const SpatialGrid& grid, const PhysicalParams& params,
                               double energy_tol = 1e-12, int max_iterations = 50000);

/// Trap-frame map U = exp(i p q0/hbar) exp(-i m q0_dot q/hbar): shift the
/// state by -q0(t), then apply the plane-wave factor.
WaveFunction trap_frame_transform(const WaveFunction& psi, const Trajectory& traj, double t);

/// Inverse of trap_frame_transform.
WaveFunction trap_frame_inverse(const WaveFunction& psi, const Trajectory& traj, double t);

/// |<psi_n(t)|psi>|^2 against the transport modes riding traj, n = 0..n_max.
std::vector<double> mode_populations(const WaveFunction& psi, const Trajectory& traj, double t,
                                     int n_max);

/// Boosted displaced oscillator eigenstate exp(i m v x/hbar) phi_n(x - x0).
WaveFunction displaced_eigenstate(int n, double x0, double v, const SpatialGrid& grid,
                                  const PhysicalParams& params);

}  // namespace qtrans
