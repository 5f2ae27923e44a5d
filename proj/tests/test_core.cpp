#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qtrans/params.hpp"
#include "qtrans/quadrature.hpp"
#include "qtrans/trajectories.hpp"

using namespace qtrans;

namespace {
const PhysicalParams unit_params{1.0, 1.0, 1.0, 0.0};
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("oscillator units: scales and round trip")
{
    PhysicalParams si{2.0, 3.0, 1.0, 0.0};
    auto frame = oscillator_units(si);
    CHECK(frame.params.mass == 1.0);
    CHECK(frame.params.omega0 == 1.0);
    CHECK(frame.params.hbar == 1.0);
    CHECK(frame.scale.length == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(frame.scale.energy == doctest::Approx(3.0).epsilon(1e-14));

    auto identity = oscillator_units(unit_params);
    CHECK(identity.scale.length == 1.0);
    CHECK(identity.scale.time == 1.0);
    CHECK(identity.scale.energy == 1.0);

    // Round trip through oscillator units reproduces the original spec.
    PhysicalParams rb{1.44e-25, 2.0 * kPi * 8.0, 1.054571817e-34, 9.81};
    auto f = oscillator_units(rb);
    TransportSpec spec{2.25e-3, 0.1, 3.0e-3, -1.0e-3};
    auto back = f.from_oscillator(f.to_oscillator(spec));
    CHECK(back.distance == doctest::Approx(spec.distance).epsilon(1e-12));
    CHECK(back.duration == doctest::Approx(spec.duration).epsilon(1e-12));
    CHECK(back.v_initial == doctest::Approx(spec.v_initial).epsilon(1e-12));
    CHECK(back.v_final == doctest::Approx(spec.v_final).epsilon(1e-12));

    // a and b are dimensionless: invariant under the unit change.
    auto osc_spec = f.to_oscillator(spec);
    CHECK(osc_spec.velocity_parameter() ==
          doctest::Approx(spec.velocity_parameter()).epsilon(1e-12));
    CHECK(osc_spec.duration_parameter(f.params) ==
          doctest::Approx(spec.duration_parameter(rb)).epsilon(1e-12));
}

TEST_CASE("params validation")
{
    CHECK_THROWS_AS((PhysicalParams{-1.0, 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PhysicalParams{1.0, 0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TransportSpec{1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TransportSpec{0.0, 1.0}.velocity_parameter()), std::domain_error);
    NumericsConfig bad;
    bad.grid_points = 1000;  // not a power of two
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK(unit_params.sigma0() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("quadrature: exact for the acceleration integrals")
{
    // int_0^1 (60 s - 180 s^2 + 120 s^3)^2 ds = 120/7, the quintic's
    // acceleration integral (beta-function expansion done by hand).
    double quintic = integrate(
        [](double s) {
            const double f = 60.0 * s - 180.0 * s * s + 120.0 * s * s * s;
            return f * f;
        },
        0.0, 1.0);
    CHECK(quintic == doctest::Approx(120.0 / 7.0).epsilon(1e-13));

    // int_0^1 (6 - 12 s)^2 ds = 12 for the cubic.
    double cubic = integrate(
        [](double s) {
            const double f = 6.0 - 12.0 * s;
            return f * f;
        },
        0.0, 1.0);
    CHECK(cubic == doctest::Approx(12.0).epsilon(1e-14));

    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    double sine = integrate([](double t) { return std::sin(t); }, 0.0, kPi);
    CHECK(sine == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("polynomial boundary-value solve reproduces the closed forms")
{
    TransportSpec spec{1.0, 1.0};

    auto quintic = solve_polynomial_qc(BoundaryConditions::rest_to_rest(1.0), spec);
    REQUIRE(quintic.coefficients().size() == 6);
    const double expected_quintic[6] = {0.0, 0.0, 0.0, 10.0, -15.0, 6.0};
    for (int i = 0; i < 6; ++i)
        CHECK(std::abs(quintic.coefficients()[i] - expected_quintic[i]) < 1e-12);

    BoundaryConditions four;
    four.initial = {0.0, 0.0, std::nullopt};
    four.final = {1.0, 0.0, std::nullopt};
    auto cubic = solve_polynomial_qc(four, spec);
    REQUIRE(cubic.coefficients().size() == 4);
    const double expected_cubic[4] = {0.0, 0.0, 3.0, -2.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(cubic.coefficients()[i] - expected_cubic[i]) < 1e-12);

    // Distance and duration scaling: coefficients of q_c/d in s are invariant.
    TransportSpec scaled{3.7, 12.9};
    auto q2 = solve_polynomial_qc(BoundaryConditions::rest_to_rest(3.7), scaled);
    for (int i = 0; i < 6; ++i)
        CHECK(q2.coefficients()[i] / 3.7 == doctest::Approx(expected_quintic[i]).epsilon(1e-12));

    // Null transport with all-zero conditions gives the zero polynomial.
    auto zero = solve_polynomial_qc(BoundaryConditions::rest_to_rest(0.0), spec);
    for (double c : zero.coefficients()) CHECK(std::abs(c) < 1e-15);

    // Mixed acceleration imposition is rejected.
    BoundaryConditions mixed;
    mixed.initial = {0.0, 0.0, 0.0};
    mixed.final = {1.0, 0.0, std::nullopt};
    CHECK_THROWS_AS(solve_polynomial_qc(mixed, spec), std::invalid_argument);
}

TEST_CASE("stopping polynomial matches the velocity-boundary closed form")
{
    // q_c/d = 3(2-a) s^5 - (15-8a) s^4 - 2(-5+3a) s^3 + a s.
    const double a = 0.8, b = 1.6, d = 1.0;
    TransportSpec spec{d, b, a * d / b, 0.0};
    auto traj = stopping_trajectory(spec, unit_params);
    REQUIRE(traj.qc_poly.has_value());
    const auto& c = traj.qc_poly->coefficients();
    REQUIRE(c.size() == 6);
    CHECK(c[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(a * d).epsilon(1e-12));
    CHECK(std::abs(c[2]) < 1e-12);
    CHECK(c[3] == doctest::Approx(-2.0 * (-5.0 + 3.0 * a) * d).epsilon(1e-12));
    CHECK(c[4] == doctest::Approx(-(15.0 - 8.0 * a) * d).epsilon(1e-12));
    CHECK(c[5] == doctest::Approx(3.0 * (2.0 - a) * d).epsilon(1e-12));

    // Imposed boundary values.
    CHECK(traj.q_c.value(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(traj.q_c.velocity(0.0) == doctest::Approx(spec.v_initial).epsilon(1e-12));
    CHECK(traj.q_c.value(spec.duration) == doctest::Approx(d).epsilon(1e-12));
    CHECK(traj.q_c.velocity(spec.duration) == doctest::Approx(0.0).epsilon(1e-12));

    // Initial trap-path slope in s: -12(-5+3a)/b^2 + a, from the q_0 form.
    REQUIRE(traj.q0_poly.has_value());
    const double slope = traj.q0_poly->derivative()(0.0);
    CHECK(slope == doctest::Approx((-12.0 * (-5.0 + 3.0 * a) / (b * b) + a) * d).epsilon(1e-12));

    // a = 0 reduces to the rest-to-rest pair.
    TransportSpec rest{d, b, 0.0, 0.0};
    auto stop0 = stopping_trajectory(rest, unit_params);
    auto quintic = inverse_polynomial_trajectory(rest, unit_params);
    for (int i = 0; i < 6; ++i)
        CHECK(stop0.qc_poly->coefficients()[i] ==
              doctest::Approx(quintic.qc_poly->coefficients()[i]).epsilon(1e-12));
}

TEST_CASE("trap path from the classical path")
{
    const double d = 2.0, tf = 1.7, b = tf;
    TransportSpec spec{d, tf};
    auto traj = inverse_polynomial_trajectory(spec, unit_params);

    // Midpoint symmetry: q0(tf/2) = d/2.
    CHECK(traj.q_0.value(tf / 2.0) == doctest::Approx(d / 2.0).epsilon(1e-12));

    // q0/d = 10s^3 - 15s^4 + 6s^5 + (60s - 180s^2 + 120s^3)/b^2, b = w tf.
    for (double s : {0.1, 0.3, 0.5, 0.77, 0.95}) {
        const double p = 10.0 * std::pow(s, 3) - 15.0 * std::pow(s, 4) + 6.0 * std::pow(s, 5);
        const double pdd = 60.0 * s - 180.0 * s * s + 120.0 * s * s * s;
        CHECK(traj.q_0.value(s * tf) / d == doctest::Approx(p + pdd / (b * b)).epsilon(1e-12));
    }

    // Adiabatic limit: the correction scales away as 1/b^2.
    TransportSpec slow{d, 1e4};
    auto adiabatic = inverse_polynomial_trajectory(slow, unit_params);
    for (double s : {0.2, 0.5, 0.8})
        CHECK(std::abs(adiabatic.q_0.value(s * 1e4) - adiabatic.q_c.value(s * 1e4)) < 1e-6 * d);

    // Gravity shifts the trap below the classical path by g/w^2 at the ends.
    PhysicalParams grav = unit_params;
    grav.gravity = 0.3;
    auto lifted = inverse_polynomial_trajectory(spec, grav);
    CHECK(lifted.kind == TrajectoryKind::GravityVariant);
    CHECK(lifted.q_0.value(0.0) == doctest::Approx(0.3).epsilon(1e-12));
    for (double t : {0.0, 0.4, 1.1, tf})
        CHECK(lifted.q_0.value(t) - lifted.q_c.value(t) ==
              doctest::Approx((lifted.q_c.acceleration(t) + 0.3)).epsilon(1e-10));
}

TEST_CASE("harmonic consistency: w^2 (q0 - qc) = qc'' + g on all protocols")
{
    PhysicalParams grav = unit_params;
    grav.gravity = 0.17;
    TransportSpec spec{1.3, 2.9, 0.5, 0.0};
    TransportSpec launch_spec{1.3, 2.9, 0.0, 0.7};
    const Trajectory trajectories[] = {
        inverse_polynomial_trajectory(spec, unit_params),
        inverse_polynomial_trajectory(spec, grav),
        quasi_optimal_trajectory(spec, unit_params),
        stopping_trajectory(spec, unit_params),
        launching_trajectory(launch_spec, unit_params),
        bang_bang_trajectory(TransportSpec{1.3, 2.9}, unit_params),
    };
    for (const auto& traj : trajectories) {
        const double g = traj.params.gravity;
        for (int i = 0; i <= 1000; ++i) {
            const double t = traj.spec.duration * i / 1000.0;
            const double lhs = traj.q_0.value(t) - traj.q_c.value(t);
            const double rhs = traj.q_c.acceleration(t) + g;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("launching is the time reversal of stopping")
{
    const double d = 1.0, tf = 2.2, v0 = 0.6;
    auto stop = stopping_trajectory({d, tf, v0, 0.0}, unit_params);
    auto launch = launching_trajectory({d, tf, 0.0, v0}, unit_params);

    CHECK(launch.q_c.velocity(tf) == doctest::Approx(v0).epsilon(1e-12));
    CHECK(launch.q_c.acceleration(tf) == doctest::Approx(0.0).epsilon(1e-12));
    for (double t : {0.0, 0.3, 1.0, 1.9, tf}) {
        CHECK(launch.q_c.value(t) == doctest::Approx(d - stop.q_c.value(tf - t)).epsilon(1e-11));
        CHECK(launch.q_0.value(t) == doctest::Approx(d - stop.q_0.value(tf - t)).epsilon(1e-11));
    }

    // Degenerate launch equals the rest-to-rest quintic.
    auto launch0 = launching_trajectory({d, tf, 0.0, 0.0}, unit_params);
    auto quintic = inverse_polynomial_trajectory({d, tf}, unit_params);
    for (int i = 0; i < 6; ++i)
        CHECK(launch0.qc_poly->coefficients()[i] ==
              doctest::Approx(quintic.qc_poly->coefficients()[i]).epsilon(1e-12));
}

TEST_CASE("bang-bang trap path and classical response")
{
    const double d = 1.0;

    SUBCASE("trap path shape")
    {
        const double tf = 3.0;
        auto traj = bang_bang_trajectory({d, tf}, unit_params);
        CHECK(traj.q_0.value(tf / 2.0) == doctest::Approx(d / 2.0).epsilon(1e-12));
        CHECK(traj.q_0.velocity(tf / 2.0 - 1e-9) == doctest::Approx(2.0 * d / tf).epsilon(1e-6));
        CHECK(traj.q_0.value(tf) == doctest::Approx(d).epsilon(1e-12));
        CHECK(traj.q_0.acceleration(0.2 * tf) == doctest::Approx(4.0 * d / (tf * tf)));
        CHECK(traj.q_0.acceleration(0.8 * tf) == doctest::Approx(-4.0 * d / (tf * tf)));

        // q_c and its velocity are continuous at the switch.
        const double eps = 1e-12;
        CHECK(traj.q_c.value(tf / 2.0 - eps) ==
              doctest::Approx(traj.q_c.value(tf / 2.0 + eps)).epsilon(1e-12));
        CHECK(traj.q_c.velocity(tf / 2.0 - eps) ==
              doctest::Approx(traj.q_c.velocity(tf / 2.0 + eps)).epsilon(1e-12));
    }

    SUBCASE("discrete perfect times against an RK4 oracle")
    {
        for (int big_n : {1, 2}) {
            const double tf = 4.0 * kPi * big_n;
            auto traj = bang_bang_trajectory({d, tf}, unit_params);
            CHECK(std::abs(traj.q_c.value(tf) - d) < 1e-10);
            CHECK(std::abs(traj.q_c.velocity(tf)) < 1e-10);

            auto rk = oracles::integrate_driven_oscillator(traj.q_0.value, 1.0, 0.0, tf, 40000);
            CHECK(rk.q == doctest::Approx(traj.q_c.value(tf)).epsilon(1e-8));
            CHECK(std::abs(rk.v - traj.q_c.velocity(tf)) < 1e-8);
        }
    }

    SUBCASE("generic time leaves a residual, validated by RK4")
    {
        const double tf = 5.0;
        auto traj = bang_bang_trajectory({d, tf}, unit_params);
        auto rk = oracles::integrate_driven_oscillator(traj.q_0.value, 1.0, 0.0, tf, 80000);
        CHECK(rk.q == doctest::Approx(traj.q_c.value(tf)).epsilon(1e-7));
        CHECK(rk.v == doctest::Approx(traj.q_c.velocity(tf)).epsilon(1e-7));
        CHECK(std::abs(traj.q_c.value(tf) - traj.q_0.value(tf)) > 0.1 * d);
    }

    CHECK_THROWS_AS((bang_bang_trajectory({d, 1.0}, PhysicalParams{1.0, 1.0, 1.0, 9.8})),
                    std::invalid_argument);
}

TEST_CASE("boundary conditions hold for every synthesized protocol")
{
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    auto gen = oracles::rng(42);
    for (int rep = 0; rep < 25; ++rep) {
        const double d = dist(gen), tf = dist(gen), v = 0.5 * dist(gen);
        const double tol = 1e-10 * std::max(std::abs(d), std::sqrt(0.5));
        for (const auto& traj : {inverse_polynomial_trajectory({d, tf}, unit_params),
                                 stopping_trajectory({d, tf, v, 0.0}, unit_params),
                                 launching_trajectory({d, tf, 0.0, v}, unit_params)}) {
            CHECK(std::abs(traj.q_c.value(0.0) - 0.0) < tol);
            CHECK(std::abs(traj.q_c.value(tf) - d) < tol);
            CHECK(std::abs(traj.q_c.velocity(0.0) - traj.spec.v_initial) < tol);
            CHECK(std::abs(traj.q_c.velocity(tf) - traj.spec.v_final) < tol);
        }
        // Bang-bang imposes the conditions on the trap path, and the final
        // classical conditions hold only at the discrete times 4 pi N / w0.
        auto bb = bang_bang_trajectory({d, tf}, unit_params);
        CHECK(std::abs(bb.q_c.value(0.0)) < tol);
        CHECK(std::abs(bb.q_c.velocity(0.0)) < tol);
        CHECK(std::abs(bb.q_0.value(0.0)) < tol);
        CHECK(std::abs(bb.q_0.value(tf) - d) < tol);
    }
}

TEST_CASE("quintic scaling: q_c/d depends only on s")
{
    auto a = inverse_polynomial_trajectory({1.0, 1.0}, unit_params);
    auto b = inverse_polynomial_trajectory({-7.3, 4.2}, unit_params);
    for (double s : {0.12, 0.5, 0.81})
        CHECK(a.q_c.value(s) == doctest::Approx(b.q_c.value(s * 4.2) / -7.3).epsilon(1e-12));
}

TEST_CASE("domain scan on the rest-to-rest quintic")
{
    const double d = 1.0;

    // Slow transport keeps the trap inside [0, d].
    auto slow = domain_scan(inverse_polynomial_trajectory({d, 2.0 * 2.0 * kPi}, unit_params));
    CHECK_FALSE(slow.violates_below);
    CHECK_FALSE(slow.violates_above);

    // Fast transport overshoots on both sides, symmetrically.
    auto fast = domain_scan(inverse_polynomial_trajectory({d, 2.0}, unit_params));
    CHECK(fast.violates_below);
    CHECK(fast.violates_above);
    CHECK(fast.max - d == doctest::Approx(-fast.min).epsilon(1e-10));

    // Onset of the violation.
    CHECK(critical_rest_to_rest_duration() == doctest::Approx(2.505).epsilon(6e-4));

    // Touching the boundary at the endpoints is not a violation.
    auto touch = domain_scan(inverse_polynomial_trajectory({d, 40.0}, unit_params));
    CHECK(touch.min >= -1e-12);
    CHECK(touch.max <= d + 1e-12);
}

TEST_CASE("stopping region map and thresholds")
{
    // Coarse map; the acceptance suite runs the full-resolution version.
    auto map = stopping_region_map(0.1, 3.0, 0.3, 4.0 * kPi, 30, 40, 2);
    REQUIRE(map.a_values.size() == 30);
    REQUIRE(map.b_values.size() == 40);

    // Rule 1: no below-violation once tf > T0 (b > 2 pi).
    for (std::size_t i = 0; i < map.a_values.size(); ++i)
        for (std::size_t j = 0; j < map.b_values.size(); ++j)
            if (map.b_values[j] > 2.0 * kPi) CHECK_FALSE(map.below_at(i, j));

    // Rule 2: the below-violation boundary approaches b = 6 for large a.
    CHECK(stopping_below_threshold_b(1000.0) == doctest::Approx(6.0).epsilon(2e-3));

    // Rule 3: above-violation for every sampled b once a >= 2.513.
    for (double b_over_2pi : {0.1, 0.25, 0.4, 0.7, 1.0, 1.5}) {
        auto r = domain_scan(
            stopping_trajectory({1.0, b_over_2pi * 2.0 * kPi,
                                 2.513 / (b_over_2pi * 2.0 * kPi), 0.0},
                                unit_params));
        CHECK(r.violates_above);
    }

    // The computed always-above boundary sits at the cubic-contact value 2.5,
    // slightly inside the quoted 2.513.
    double a_always = 0.0;
    for (double b_over_2pi = 0.1; b_over_2pi <= 1.6; b_over_2pi += 0.1)
        a_always = std::max(a_always,
                            stopping_above_threshold_a(b_over_2pi * 2.0 * kPi));
    CHECK(a_always == doctest::Approx(2.5).epsilon(2e-3));
    CHECK(a_always < 2.513);

    CHECK_THROWS_AS(stopping_region_map(0.0, 1.0, 0.5, 1.0, 0, 10), std::invalid_argument);
}

TEST_CASE("direct trap path for the compensated approach")
{
    const double d = 1.5, tf = 2.0;
    auto smooth = direct_trap_trajectory({d, tf}, unit_params);
    CHECK(smooth.q_0.value(0.0) == doctest::Approx(0.0));
    CHECK(smooth.q_0.value(tf) == doctest::Approx(d).epsilon(1e-12));
    CHECK(std::abs(smooth.q_0.velocity(0.0)) < 1e-12);
    CHECK(std::abs(smooth.q_0.velocity(tf)) < 1e-12);
    CHECK(std::abs(smooth.q_0.acceleration(0.0)) < 1e-11);
    CHECK(std::abs(smooth.q_0.acceleration(tf)) < 1e-11);

    auto kinked = direct_trap_trajectory({d, tf}, unit_params, false);
    CHECK(std::abs(kinked.q_0.velocity(0.0)) < 1e-12);
    CHECK(kinked.q_0.acceleration(0.0) == doctest::Approx(6.0 * d / (tf * tf)).epsilon(1e-12));
}
