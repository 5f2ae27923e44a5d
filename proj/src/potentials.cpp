#include "qtrans/potentials.hpp"

#include <cmath>

namespace qtrans {

TrapProfile harmonic_profile(const PhysicalParams& params)
{
    const double k = params.mass * params.omega0 * params.omega0;
    return {[k](double xi) { return 0.5 * k * xi * xi; }, "harmonic"};
}

TrapProfile gaussian_beam_profile(double v0, double x_r)
{
    return {[v0, x_r](double xi) { return -v0 / (1.0 + xi * xi / (x_r * x_r)); },
            "gaussian_beam"};
}

TrapProfile asymmetric_double_well_profile(double depth1, double depth2, double separation,
                                           double width)
{
    return {[=](double xi) {
                const double a = (xi + 0.5 * separation) / width;
                const double b = (xi - 0.5 * separation) / width;
                return -depth1 * std::exp(-a * a) - depth2 * std::exp(-b * b);
            },
            "asymmetric_double_well"};
}

GaussianBeamLongitudinal gaussian_beam_from_frequency(const Trajectory& traj, double x_r)
{
    const auto& p = traj.params;
    return {0.5 * p.mass * p.omega0 * p.omega0 * x_r * x_r, x_r, traj};
}

QuarticExpanded quartic_from_frequency(const Trajectory& traj, double x_r)
{
    const auto& p = traj.params;
    return {0.5 * p.mass * p.omega0 * p.omega0 * x_r * x_r, x_r, traj};
}

const Trajectory& trajectory_of(const PotentialModel& pot)
{
    return std::visit([](const auto& v) -> const Trajectory& { return v.traj; }, pot);
}

namespace {

struct PotentialAt {
    double x;
    double t;

    double operator()(const MovingHarmonic& v) const
    {
        const auto& p = v.traj.params;
        const double d = x - v.traj.q_0.value(t);
        return 0.5 * p.mass * p.omega0 * p.omega0 * d * d + p.mass * p.gravity * x;
    }
    double operator()(const CompensatedTrap& v) const
    {
        const auto& p = v.traj.params;
        return v.profile.u(x - v.traj.q_0.value(t)) - p.mass * x * v.traj.q_0.acceleration(t);
    }
    double operator()(const GaussianBeamLongitudinal& v) const
    {
        const double d = x - v.traj.q_0.value(t);
        return -v.v0 / (1.0 + d * d / (v.x_r * v.x_r));
    }
    double operator()(const QuarticExpanded& v) const
    {
        const double d = x - v.traj.q_0.value(t);
        const double d2 = d * d;
        return v.v0 * d2 / (v.x_r * v.x_r) - v.v0 * d2 * d2 / (v.x_r * v.x_r * v.x_r * v.x_r);
    }
    double operator()(const TransitionlessMomentum& v) const
    {
        if (!v.include_h0) return 0.0;
        const auto& p = v.traj.params;
        const double d = x - v.traj.q_0.value(t);
        return 0.5 * p.mass * p.omega0 * p.omega0 * d * d;
    }
};

}  // namespace

double potential_value(const PotentialModel& pot, double x, double t)
{
    return std::visit(PotentialAt{x, t}, pot);
}

double final_potential_value(const PotentialModel& pot, double x)
{
    const Trajectory& traj = trajectory_of(pot);
    const double tf = traj.spec.duration;
    const double q_end = traj.q_0.value(tf);
    const double xi = x - q_end;

    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CompensatedTrap>) {
                return v.profile.u(xi);
            } else if constexpr (std::is_same_v<T, GaussianBeamLongitudinal>) {
                return -v.v0 / (1.0 + xi * xi / (v.x_r * v.x_r));
            } else if constexpr (std::is_same_v<T, QuarticExpanded>) {
                const double xi2 = xi * xi;
                return v.v0 * xi2 / (v.x_r * v.x_r) -
                       v.v0 * xi2 * xi2 / (v.x_r * v.x_r * v.x_r * v.x_r);
            } else if constexpr (std::is_same_v<T, MovingHarmonic>) {
                const auto& p = traj.params;
                return 0.5 * p.mass * p.omega0 * p.omega0 * xi * xi + p.mass * p.gravity * x;
            } else {
                const auto& p = traj.params;
                return 0.5 * p.mass * p.omega0 * p.omega0 * xi * xi;
            }
        },
        pot);
}

double momentum_drive(const PotentialModel& pot, double t)
{
    if (const auto* tm = std::get_if<TransitionlessMomentum>(&pot))
        return tm->traj.q_0.velocity(t);
    return 0.0;
}

bool includes_kinetic(const PotentialModel& pot)
{
    if (const auto* tm = std::get_if<TransitionlessMomentum>(&pot)) return tm->include_h0;
    return true;
}

InvariantForm invariant_form(const PotentialModel& pot)
{
    if (std::holds_alternative<CompensatedTrap>(pot)) return InvariantForm::CompensatedU;
    if (std::holds_alternative<TransitionlessMomentum>(pot))
        return InvariantForm::DisplacedHarmonic;
    return InvariantForm::HarmonicQc;
}

std::string potential_name(const PotentialModel& pot)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MovingHarmonic>) return "moving_harmonic";
            else if constexpr (std::is_same_v<T, CompensatedTrap>) return "compensated_trap";
            else if constexpr (std::is_same_v<T, GaussianBeamLongitudinal>) return "gaussian_beam";
            else if constexpr (std::is_same_v<T, QuarticExpanded>) return "quartic_expanded";
            else return "transitionless_momentum";
        },
        pot);
}

}  // namespace qtrans
