#pragma once

#include <functional>
#include <string>
#include <variant>

#include "qtrans/params.hpp"
#include "qtrans/trajectories.hpp"

namespace qtrans {

/// Rigid trap shape U(xi) in the frame of the trap minimum.
struct TrapProfile {
    std::function<double(double)> u;
    std::string name;
};

TrapProfile harmonic_profile(const PhysicalParams& params);

/// Longitudinal cigar-trap well -V0 / (1 + xi^2/xR^2).
TrapProfile gaussian_beam_profile(double v0, double x_r);

/// Two offset Gaussian dips of different depth; exercises the compensating
/// force with a potential that has no special symmetry.
TrapProfile asymmetric_double_well_profile(double depth1, double depth2, double separation,
                                           double width);

/// V(x,t) = m w^2 (x - q0(t))^2 / 2.
struct MovingHarmonic {
    Trajectory traj;
};

/// V(x,t) = U(x - q0(t)) - m x q0_ddot(t): arbitrary rigid trap plus the
/// force that cancels inertia in the trap frame.
struct CompensatedTrap {
    Trajectory traj;
    TrapProfile profile;
};

/// Bare moving cigar trap, no compensation.
struct GaussianBeamLongitudinal {
    double v0 = 0.0;
    double x_r = 1.0;
    Trajectory traj;
};

/// Quartic expansion of the cigar trap around its minimum:
/// V = V0 D^2/xR^2 - V0 D^4/xR^4, D = x - q0(t).
struct QuarticExpanded {
    double v0 = 0.0;
    double x_r = 1.0;
    Trajectory traj;
};

/// H = [p^2/2m + m w^2 (x-q0)^2/2] + p q0_dot(t); with include_h0 = false
/// only the momentum drive acts and the propagator is a pure displacement.
struct TransitionlessMomentum {
    Trajectory traj;
    bool include_h0 = true;
};

using PotentialModel = std::variant<MovingHarmonic, CompensatedTrap, GaussianBeamLongitudinal,
                                    QuarticExpanded, TransitionlessMomentum>;

/// Cigar trap with depth tied to the harmonic frequency, V0 = m w^2 xR^2/2.
GaussianBeamLongitudinal gaussian_beam_from_frequency(const Trajectory& traj, double x_r);
QuarticExpanded quartic_from_frequency(const Trajectory& traj, double x_r);

const Trajectory& trajectory_of(const PotentialModel& pot);

/// Position-diagonal part of H at (x, t) during transport.
double potential_value(const PotentialModel& pot, double x, double t);

/// Static trap potential after the protocol ends (compensation and drive off,
/// trap parked at q0(tf)).
double final_potential_value(const PotentialModel& pot, double x);

/// Coefficient of p in H (the transitionless drive q0_dot), 0 otherwise.
double momentum_drive(const PotentialModel& pot, double t);

/// False only for TransitionlessMomentum with include_h0 = false.
bool includes_kinetic(const PotentialModel& pot);

/// Which conserved quantity <I> to report along a run.
enum class InvariantForm {
    HarmonicQc,        // (p - m qc_dot)^2/2m + m w^2 (q - q_c)^2/2
    CompensatedU,      // (p - m q0_dot)^2/2m + U(q - q0)
    DisplacedHarmonic  // p^2/2m + m w^2 (q - q0)^2/2
};

InvariantForm invariant_form(const PotentialModel& pot);

std::string potential_name(const PotentialModel& pot);

}  // namespace qtrans
