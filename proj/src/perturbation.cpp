#include "qtrans/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtrans/hermite.hpp"
#include "qtrans/quadrature.hpp"

namespace qtrans {

BeamParams BeamParams::from_frequency(const PhysicalParams& params, double x_r)
{
    params.validate();
    if (!(x_r > 0.0)) throw std::invalid_argument("beam: x_r must be > 0");
    return {0.5 * params.mass * params.omega0 * params.omega0 * x_r * x_r, x_r};
}

BeamParams BeamParams::from_beam(double v0, double waist, double wavelength)
{
    if (!(waist > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("beam: waist and wavelength must be > 0");
    return {v0, std::numbers::pi * waist * waist / wavelength};
}

void BeamParams::validate() const
{
    if (!(v0 > 0.0)) throw std::invalid_argument("beam: v0 must be > 0");
    if (!(x_r > 0.0)) throw std::invalid_argument("beam: x_r must be > 0");
}

namespace {

void check_level(int n)
{
    if (n < 0 || n > kMaxOscillatorLevel)
        throw std::invalid_argument("perturbation: vibrational level n out of range");
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// log((2n)!!) = n log 2 + log(n!)
double log_double_factorial_even(int n)
{
    return static_cast<double>(n) * std::numbers::ln2 + log_factorial(n);
}

// (2n)!! / (2^(shift + n) n!) evaluated in log space.
double level_prefactor(int n, int shift)
{
    return std::exp(log_double_factorial_even(n) - log_factorial(n) -
                    (shift + n) * std::numbers::ln2);
}

void check_depth_frequency_tie(const PhysicalParams& params, const BeamParams& beam)
{
    const double expected = 0.5 * params.mass * params.omega0 * params.omega0 * beam.x_r * beam.x_r;
    if (std::abs(beam.v0 - expected) > 1e-9 * expected)
        throw std::invalid_argument(
            "perturbation: the discrete-time closed forms require V0 = m omega0^2 xR^2/2");
}

}  // namespace

double f_bang_bang(int big_n, int n, const PhysicalParams& params, double distance,
                   const BeamParams& beam)
{
    params.validate();
    beam.validate();
    check_level(n);
    if (big_n < 1) throw std::invalid_argument("f_bang_bang: N must be >= 1");
    check_depth_frequency_tie(params, beam);

    const double pi = std::numbers::pi;
    const double m = params.mass;
    const double w = params.omega0;
    const double hbar = params.hbar;
    const double d2 = distance * distance;
    const double nn = static_cast<double>(big_n);
    const double n4 = nn * nn * nn * nn;
    const double n7 = n4 * nn * nn * nn;
    const double n8 = n4 * n4;
    const double pi4 = pi * pi * pi * pi;
    const double pi7 = pi4 * pi * pi * pi;
    const double pi8 = pi4 * pi4;

    const double brace = 1536.0 * n8 * hbar * hbar * (1.0 + 2.0 * n * (1.0 + n)) * pi8 +
                         576.0 * d2 * n4 * hbar * m * (1.0 + 2.0 * n) * pi4 * w +
                         35.0 * d2 * d2 * m * m * w * w;
    return -level_prefactor(n, 10) / (n7 * m * pi7 * w * beam.x_r * beam.x_r) * brace;
}

double f_inverse(double t_f, int n, const PhysicalParams& params, double distance,
                 const BeamParams& beam)
{
    params.validate();
    beam.validate();
    check_level(n);
    if (!(t_f > 0.0)) throw std::invalid_argument("f_inverse: t_f must be > 0");

    const double m = params.mass;
    const double w = params.omega0;
    const double hbar = params.hbar;
    const double d2 = distance * distance;
    const double tf3 = t_f * t_f * t_f;
    const double tf7 = tf3 * tf3 * t_f;
    const double w2 = w * w;
    const double w5 = w2 * w2 * w;
    const double w8 = w5 * w2 * w;
    const double xr4 = beam.x_r * beam.x_r * beam.x_r * beam.x_r;

    const double bracket = 1728000.0 * d2 * d2 / (1001.0 * tf7 * w8) +
                           1440.0 * d2 * hbar * (1.0 + 2.0 * n) / (7.0 * m * tf3 * w5) +
                           3.0 * hbar * hbar * (1.0 + 2.0 * n * (1.0 + n)) * t_f / (m * m * w2);
    return -level_prefactor(n, 2) * beam.v0 / xr4 * bracket;
}

double f_inverse_discrete(int big_n, int n, const PhysicalParams& params, double distance,
                          const BeamParams& beam)
{
    params.validate();
    beam.validate();
    check_level(n);
    if (big_n < 1) throw std::invalid_argument("f_inverse_discrete: N must be >= 1");
    check_depth_frequency_tie(params, beam);

    const double pi = std::numbers::pi;
    const double m = params.mass;
    const double w = params.omega0;
    const double hbar = params.hbar;
    const double d2 = distance * distance;
    const double nn = static_cast<double>(big_n);
    const double n4 = nn * nn * nn * nn;
    const double n7 = n4 * nn * nn * nn;
    const double n8 = n4 * n4;
    const double pi4 = pi * pi * pi * pi;
    const double pi7 = pi4 * pi * pi * pi;
    const double pi8 = pi4 * pi4;

    const double brace = 128128.0 * n8 * hbar * hbar * (1.0 + 2.0 * n * (1.0 + n)) * pi8 +
                         34320.0 * d2 * n4 * hbar * m * (1.0 + 2.0 * n) * pi4 * w +
                         1125.0 * d2 * d2 * m * m * w * w;
    return -3.0 * level_prefactor(n, 8) / (1001.0 * n7 * m * pi7 * w * beam.x_r * beam.x_r) *
           brace;
}

double f_numeric(const Trajectory& traj, int n, const BeamParams& beam, double quad_tol)
{
    beam.validate();
    check_level(n);
    const auto& p = traj.params;
    const double tf = traj.spec.duration;
    const double width2 = p.hbar / (2.0 * p.mass * p.omega0);  // <xi^2> for n = 0
    const double m2 = (2.0 * n + 1.0) * width2;
    const double m4 = 3.0 * (2.0 * n * (n + 1.0) + 1.0) * width2 * width2;

    auto integrand = [&](double t) {
        const double delta = traj.q_c.value(t) - traj.q_0.value(t);
        const double d2 = delta * delta;
        return d2 * d2 + 6.0 * d2 * m2 + m4;
    };
    const std::vector<double> segments = traj.kind == TrajectoryKind::BangBang
                                             ? std::vector<double>{0.0, 0.5 * tf, tf}
                                             : std::vector<double>{0.0, tf};
    const double xr4 = beam.x_r * beam.x_r * beam.x_r * beam.x_r;
    return -beam.v0 / xr4 * integrate_segmented(integrand, segments, quad_tol);
}

PerturbationReport make_perturbation_report(double f_closed, double f_num,
                                            const PhysicalParams& params)
{
    PerturbationReport report;
    report.f_closed = f_closed;
    report.f_numeric = f_num;
    report.first_order_overlap = {1.0, -f_closed / params.hbar};
    report.relative_discrepancy =
        std::abs(f_closed - f_num) / std::max(std::abs(f_closed), 1e-300);
    return report;
}

}  // namespace qtrans
