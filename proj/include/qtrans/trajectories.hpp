#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtrans/params.hpp"

namespace qtrans {

/// Polynomial in the reduced time s = t/tf, ascending coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    double operator()(double s) const;
    Polynomial derivative() const;
    const std::vector<double>& coefficients() const { return c_; }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

private:
    std::vector<double> c_;
};

/// Position/velocity/acceleration constraints at one endpoint. Acceleration
/// is optional; a full transport-mode trajectory imposes it on both ends.
struct EndpointConditions {
    double position = 0.0;
    double velocity = 0.0;
    std::optional<double> acceleration;
};

struct BoundaryConditions {
    EndpointConditions initial;
    EndpointConditions final;

    /// 4 (positions and velocities) or 6 (accelerations on both ends).
    int count() const;
    void validate() const;

    static BoundaryConditions rest_to_rest(double distance);
};

enum class TrajectoryKind {
    InversePolynomial,
    Stopping,
    Launching,
    BangBang,
    QuasiOptimal,
    GravityVariant,
    Custom,
};

std::string to_string(TrajectoryKind kind);

/// Evaluator with two derivatives; all protocols here have closed forms.
struct PathFunctions {
    std::function<double(double)> value;
    std::function<double(double)> velocity;
    std::function<double(double)> acceleration;
};

/// Classical trajectory q_c(t) paired with the trap path q_0(t) on [0, tf].
/// For harmonic protocols q_0 = q_c + (q_c'' + g)/omega0^2 pointwise; the
/// bang-bang protocol instead prescribes q_0 and derives q_c.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::Custom;
    PathFunctions q_c;
    PathFunctions q_0;
    TransportSpec spec;
    PhysicalParams params;

    // Present for polynomial protocols; reduced-time s = t/tf coefficients.
    std::optional<Polynomial> qc_poly;
    std::optional<Polynomial> q0_poly;

    double duration() const { return spec.duration; }
};

/// Fits the minimal-degree polynomial q_c(s)/1 (dimensionful coefficients)
/// matching the boundary conditions; degree k-1 for k conditions. The linear
/// system is solved by Gaussian elimination with partial pivoting.
Polynomial solve_polynomial_qc(const BoundaryConditions& bc, const TransportSpec& spec);

/// Wraps a reduced-time polynomial as a trajectory (q_c only; q_0 via
/// derive_q0). `kind` is metadata.
Trajectory polynomial_trajectory(const Polynomial& qc_poly, const TransportSpec& spec,
                                 const PhysicalParams& params,
                                 TrajectoryKind kind = TrajectoryKind::Custom);

/// Fills in q_0 = q_c + (q_c'' + g)/omega0^2.
Trajectory derive_q0(Trajectory traj);

/// Rest-to-rest quintic protocol, q_c/d = 10 s^3 - 15 s^4 + 6 s^5.
Trajectory inverse_polynomial_trajectory(const TransportSpec& spec, const PhysicalParams& params);

/// Four-condition cubic q_c/d = 3 s^2 - 2 s^3 minimizing the averaged
/// sloshing energy; does not satisfy the acceleration conditions.
Trajectory quasi_optimal_trajectory(const TransportSpec& spec, const PhysicalParams& params);

/// Catch incoming atoms of velocity spec.v_initial and bring them to rest at
/// distance d in time tf.
Trajectory stopping_trajectory(const TransportSpec& spec, const PhysicalParams& params);

/// Launch atoms at rest to final velocity spec.v_final at distance d.
Trajectory launching_trajectory(const TransportSpec& spec, const PhysicalParams& params);

/// Trap path with piecewise-constant acceleration +-4d/tf^2 switching at
/// tf/2; q_c solves the driven oscillator equation from rest.
Trajectory bang_bang_trajectory(const TransportSpec& spec, const PhysicalParams& params);

/// Rest-to-rest path imposed directly on the trap position, for the
/// compensating-force approach where the auxiliary trajectory coincides with
/// q_0. Quintic interpolation with continuous trap acceleration by default;
/// `continuous_acceleration = false` drops the endpoint acceleration
/// conditions (cubic), leaving q0'' discontinuous at the protocol edges.
Trajectory direct_trap_trajectory(const TransportSpec& spec, const PhysicalParams& params,
                                  bool continuous_acceleration = true);

/// Where the trap path leaves [0, d]. Tolerance eps = 1e-12*|d| separates
/// touching the boundary from crossing it.
struct DomainReport {
    double min = 0.0;
    double max = 0.0;
    bool violates_below = false;
    bool violates_above = false;
    std::vector<double> extremal_times;
};

/// Global extrema of q_0 over [0, tf]: 2048 uniform samples plus bisection
/// refinement on sign changes of the velocity.
DomainReport domain_scan(const Trajectory& traj);

/// Largest omega0*tf at which the rest-to-rest quintic trap path still
/// leaves [0, d]; the onset of geometric violation. Bisection to tol_b.
double critical_rest_to_rest_duration(double tol_b = 1e-4);

/// Boolean maps over (a, b) of where the stopping trap path leaves [0, d].
struct StoppingRegionMap {
    std::vector<double> a_values;
    std::vector<double> b_values;
    std::vector<unsigned char> below;  // row-major [ia * b_count + ib]
    std::vector<unsigned char> above;

    bool below_at(std::size_t ia, std::size_t ib) const { return below[ia * b_values.size() + ib]; }
    bool above_at(std::size_t ia, std::size_t ib) const { return above[ia * b_values.size() + ib]; }
};

StoppingRegionMap stopping_region_map(double a_min, double a_max, double b_min, double b_max,
                                      std::size_t a_count, std::size_t b_count, int threads = 1);

/// Threshold b below which the stopping path dips under 0, at fixed a.
/// Scans [b_lo, b_hi] then bisects the largest violation/no-violation edge.
double stopping_below_threshold_b(double a, double b_lo = 0.5, double b_hi = 12.0,
                                  double tol = 1e-4);

/// Smallest a at which the stopping path exceeds d, at fixed b.
double stopping_above_threshold_a(double b, double a_lo = 0.0, double a_hi = 6.0,
                                  double tol = 1e-4);

}  // namespace qtrans
