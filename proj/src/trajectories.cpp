#include "qtrans/trajectories.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qtrans {

double Polynomial::operator()(double s) const
{
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * s + c_[i];
    return acc;
}

Polynomial Polynomial::derivative() const
{
    if (c_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

int BoundaryConditions::count() const
{
    return 4 + (initial.acceleration ? 1 : 0) + (final.acceleration ? 1 : 0);
}

void BoundaryConditions::validate() const
{
    if (initial.acceleration.has_value() != final.acceleration.has_value())
        throw std::invalid_argument(
            "boundary conditions: accelerations must be imposed on both endpoints or neither");
}

BoundaryConditions BoundaryConditions::rest_to_rest(double distance)
{
    BoundaryConditions bc;
    bc.initial = {0.0, 0.0, 0.0};
    bc.final = {distance, 0.0, 0.0};
    return bc;
}

std::string to_string(TrajectoryKind kind)
{
    switch (kind) {
        case TrajectoryKind::InversePolynomial: return "inverse_polynomial";
        case TrajectoryKind::Stopping: return "stopping";
        case TrajectoryKind::Launching: return "launching";
        case TrajectoryKind::BangBang: return "bang_bang";
        case TrajectoryKind::QuasiOptimal: return "quasi_optimal";
        case TrajectoryKind::GravityVariant: return "gravity_variant";
        case TrajectoryKind::Custom: return "custom";
    }
    return "unknown";
}

namespace {

// Solves A c = rhs by Gaussian elimination with partial pivoting. The
// boundary-condition matrices are tiny (k <= 6) and well conditioned.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs)
{
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        assert(std::abs(a[col][col]) > 1e-300 && "boundary-condition system is singular");
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(k);
    for (std::size_t row = k; row-- > 0;) {
        double acc = rhs[row];
        for (std::size_t c = row + 1; c < k; ++c) acc -= a[row][c] * x[c];
        x[row] = acc / a[row][row];
    }
    return x;
}

}  // namespace

Polynomial solve_polynomial_qc(const BoundaryConditions& bc, const TransportSpec& spec)
{
    bc.validate();
    spec.validate();
    const std::size_t k = static_cast<std::size_t>(bc.count());
    const double tf = spec.duration;

    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    auto add_row = [&](int order, bool at_one, double value) {
        std::vector<double> row(k, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            double coef = 1.0;
            for (int o = 0; o < order; ++o) coef *= static_cast<double>(j) - o;
            if (coef == 0.0) continue;
            row[j] = at_one ? coef : (static_cast<int>(j) == order ? coef : 0.0);
        }
        a.push_back(std::move(row));
        rhs.push_back(value * std::pow(tf, order));
    };

    add_row(0, false, bc.initial.position);
    add_row(1, false, bc.initial.velocity);
    if (bc.initial.acceleration) add_row(2, false, *bc.initial.acceleration);
    add_row(0, true, bc.final.position);
    add_row(1, true, bc.final.velocity);
    if (bc.final.acceleration) add_row(2, true, *bc.final.acceleration);

    return Polynomial(solve_dense(std::move(a), std::move(rhs)));
}

namespace {

PathFunctions path_from_polynomial(const Polynomial& poly, double tf)
{
    auto p = std::make_shared<Polynomial>(poly);
    auto dp = std::make_shared<Polynomial>(poly.derivative());
    auto ddp = std::make_shared<Polynomial>(dp->derivative());
    PathFunctions fns;
    fns.value = [p, tf](double t) { return (*p)(t / tf); };
    fns.velocity = [dp, tf](double t) { return (*dp)(t / tf) / tf; };
    fns.acceleration = [ddp, tf](double t) { return (*ddp)(t / tf) / (tf * tf); };
    return fns;
}

Polynomial trap_polynomial(const Polynomial& qc, const TransportSpec& spec,
                           const PhysicalParams& params)
{
    // q0(s) = qc(s) + (qc''(s)/tf^2 + g) / omega0^2
    const Polynomial ddqc = qc.derivative().derivative();
    const double w2 = params.omega0 * params.omega0;
    const double tf2 = spec.duration * spec.duration;
    std::vector<double> c = qc.coefficients();
    const auto& cd = ddqc.coefficients();
    for (std::size_t i = 0; i < cd.size(); ++i) c[i] += cd[i] / (tf2 * w2);
    if (c.empty()) c.push_back(0.0);
    c[0] += params.gravity / w2;
    return Polynomial(std::move(c));
}

}  // namespace

Trajectory polynomial_trajectory(const Polynomial& qc_poly, const TransportSpec& spec,
                                 const PhysicalParams& params, TrajectoryKind kind)
{
    params.validate();
    spec.validate();
    Trajectory traj;
    traj.kind = kind;
    traj.spec = spec;
    traj.params = params;
    traj.q_c = path_from_polynomial(qc_poly, spec.duration);
    traj.qc_poly = qc_poly;
    return traj;
}

Trajectory derive_q0(Trajectory traj)
{
    if (!traj.qc_poly)
        throw std::invalid_argument("derive_q0: trajectory does not carry a polynomial q_c");
    Polynomial q0 = trap_polynomial(*traj.qc_poly, traj.spec, traj.params);
    traj.q_0 = path_from_polynomial(q0, traj.spec.duration);
    traj.q0_poly = std::move(q0);
    return traj;
}

namespace {

Trajectory six_condition_trajectory(const TransportSpec& spec, const PhysicalParams& params,
                                    double v0, double vf, TrajectoryKind kind)
{
    BoundaryConditions bc;
    bc.initial = {0.0, v0, 0.0};
    bc.final = {spec.distance, vf, 0.0};
    Polynomial qc = solve_polynomial_qc(bc, spec);
    return derive_q0(polynomial_trajectory(qc, spec, params, kind));
}

}  // namespace

Trajectory inverse_polynomial_trajectory(const TransportSpec& spec, const PhysicalParams& params)
{
    const auto kind =
        params.gravity != 0.0 ? TrajectoryKind::GravityVariant : TrajectoryKind::InversePolynomial;
    return six_condition_trajectory(spec, params, 0.0, 0.0, kind);
}

Trajectory quasi_optimal_trajectory(const TransportSpec& spec, const PhysicalParams& params)
{
    BoundaryConditions bc;
    bc.initial = {0.0, 0.0, std::nullopt};
    bc.final = {spec.distance, 0.0, std::nullopt};
    Polynomial qc = solve_polynomial_qc(bc, spec);
    return derive_q0(polynomial_trajectory(qc, spec, params, TrajectoryKind::QuasiOptimal));
}

Trajectory stopping_trajectory(const TransportSpec& spec, const PhysicalParams& params)
{
    return six_condition_trajectory(spec, params, spec.v_initial, 0.0, TrajectoryKind::Stopping);
}

Trajectory launching_trajectory(const TransportSpec& spec, const PhysicalParams& params)
{
    return six_condition_trajectory(spec, params, 0.0, spec.v_final, TrajectoryKind::Launching);
}

Trajectory bang_bang_trajectory(const TransportSpec& spec, const PhysicalParams& params)
{
    params.validate();
    spec.validate();
    if (params.gravity != 0.0)
        throw std::invalid_argument("bang_bang: gravity variant is not defined");

    const double d = spec.distance;
    const double tf = spec.duration;
    const double w = params.omega0;
    const double amp = 4.0 * d / (w * w * tf * tf);  // residual amplitude in Eq-of-motion units

    Trajectory traj;
    traj.kind = TrajectoryKind::BangBang;
    traj.spec = spec;
    traj.params = params;

    traj.q_0.value = [d, tf](double t) {
        const double s = t / tf;
        return s < 0.5 ? d * 2.0 * s * s : d * 4.0 * (s - 0.5 * s * s - 0.25);
    };
    traj.q_0.velocity = [d, tf](double t) {
        const double s = t / tf;
        return s < 0.5 ? 4.0 * d * s / tf : 4.0 * d * (1.0 - s) / tf;
    };
    traj.q_0.acceleration = [d, tf](double t) {
        return t < 0.5 * tf ? 4.0 * d / (tf * tf) : -4.0 * d / (tf * tf);
    };

    // q_c - q_0 for the two segments; q_c'' follows from the equation of
    // motion, which keeps it continuous across the switch.
    auto residual = [amp, w, tf](double t) {
        if (t < 0.5 * tf) return -amp * (1.0 - std::cos(w * t));
        return amp * (1.0 + std::cos(w * t) - 2.0 * std::cos(w * (t - 0.5 * tf)));
    };
    auto residual_dot = [amp, w, tf](double t) {
        if (t < 0.5 * tf) return -amp * w * std::sin(w * t);
        return amp * w * (-std::sin(w * t) + 2.0 * std::sin(w * (t - 0.5 * tf)));
    };

    traj.q_c.value = [traj_q0 = traj.q_0.value, residual](double t) {
        return traj_q0(t) + residual(t);
    };
    traj.q_c.velocity = [traj_v0 = traj.q_0.velocity, residual_dot](double t) {
        return traj_v0(t) + residual_dot(t);
    };
    traj.q_c.acceleration = [residual, w](double t) { return -w * w * residual(t); };

    return traj;
}

Trajectory direct_trap_trajectory(const TransportSpec& spec, const PhysicalParams& params,
                                  bool continuous_acceleration)
{
    params.validate();
    spec.validate();
    BoundaryConditions bc;
    if (continuous_acceleration) {
        bc.initial = {0.0, 0.0, 0.0};
        bc.final = {spec.distance, 0.0, 0.0};
    } else {
        bc.initial = {0.0, 0.0, std::nullopt};
        bc.final = {spec.distance, 0.0, std::nullopt};
    }
    const Polynomial q0 = solve_polynomial_qc(bc, spec);

    Trajectory traj;
    traj.kind = TrajectoryKind::Custom;
    traj.spec = spec;
    traj.params = params;
    traj.q_0 = path_from_polynomial(q0, spec.duration);
    traj.q0_poly = q0;
    // The auxiliary classical trajectory of the compensated case is the trap
    // path itself.
    traj.q_c = traj.q_0;
    traj.qc_poly = q0;
    return traj;
}

namespace {

struct Q0Eval {
    // Raw-polynomial fast path for the region maps; falls back to the
    // std::function evaluators otherwise.
    const Trajectory& traj;
    std::optional<Polynomial> p;
    std::optional<Polynomial> dp;

    explicit Q0Eval(const Trajectory& t) : traj(t)
    {
        if (t.q0_poly) {
            p = *t.q0_poly;
            dp = p->derivative();
        }
    }

    double value(double t) const
    {
        if (p) return (*p)(t / traj.spec.duration);
        return traj.q_0.value(t);
    }
    double velocity(double t) const
    {
        if (dp) return (*dp)(t / traj.spec.duration) / traj.spec.duration;
        return traj.q_0.velocity(t);
    }
};

double bisect_velocity_root(const Q0Eval& q0, double t_lo, double t_hi)
{
    double f_lo = q0.velocity(t_lo);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (t_lo + t_hi);
        const double f_mid = q0.velocity(mid);
        if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
            t_lo = mid;
            f_lo = f_mid;
        } else {
            t_hi = mid;
        }
        if (t_hi - t_lo < 1e-15 * q0.traj.spec.duration) break;
    }
    return 0.5 * (t_lo + t_hi);
}

}  // namespace

DomainReport domain_scan(const Trajectory& traj)
{
    if (!traj.q_0.value) throw std::invalid_argument("domain_scan: trajectory has no trap path");
    const double tf = traj.spec.duration;
    const double d = traj.spec.distance;
    constexpr int kSamples = 2048;

    Q0Eval q0{traj};
    DomainReport report;
    report.min = std::min(q0.value(0.0), q0.value(tf));
    report.max = std::max(q0.value(0.0), q0.value(tf));

    double prev_t = 0.0;
    double prev_v = q0.velocity(0.0);
    for (int i = 1; i <= kSamples; ++i) {
        const double t = tf * static_cast<double>(i) / kSamples;
        const double v = q0.velocity(t);
        if ((prev_v <= 0.0) != (v <= 0.0)) {
            const double t_ext = bisect_velocity_root(q0, prev_t, t);
            const double val = q0.value(t_ext);
            report.extremal_times.push_back(t_ext);
            report.min = std::min(report.min, val);
            report.max = std::max(report.max, val);
        }
        prev_t = t;
        prev_v = v;
    }
    std::sort(report.extremal_times.begin(), report.extremal_times.end());

    const double eps = 1e-12 * std::abs(d);
    report.violates_below = report.min < -eps;
    report.violates_above = report.max > d + eps;
    return report;
}

namespace {

const PhysicalParams kUnitParams{1.0, 1.0, 1.0, 0.0};

bool quintic_violates(double b)
{
    TransportSpec spec{1.0, b, 0.0, 0.0};
    const auto report = domain_scan(inverse_polynomial_trajectory(spec, kUnitParams));
    return report.violates_below || report.violates_above;
}

Trajectory stopping_for(double a, double b)
{
    // Oscillator units with d = 1: tf = b, v0 = a/tf.
    TransportSpec spec{1.0, b, a / b, 0.0};
    return stopping_trajectory(spec, kUnitParams);
}

}  // namespace

double critical_rest_to_rest_duration(double tol_b)
{
    double lo = 1.0, hi = 4.0;
    if (!quintic_violates(lo) || quintic_violates(hi))
        throw std::runtime_error("critical duration: bracket does not straddle the onset");
    while (hi - lo > tol_b) {
        const double mid = 0.5 * (lo + hi);
        (quintic_violates(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

StoppingRegionMap stopping_region_map(double a_min, double a_max, double b_min, double b_max,
                                      std::size_t a_count, std::size_t b_count, int threads)
{
    if (a_count < 1 || b_count < 1)
        throw std::invalid_argument("stopping_region_map: resolution must be positive");
    StoppingRegionMap map;
    map.a_values.resize(a_count);
    map.b_values.resize(b_count);
    for (std::size_t i = 0; i < a_count; ++i)
        map.a_values[i] =
            a_count == 1 ? a_min : a_min + (a_max - a_min) * static_cast<double>(i) / (a_count - 1);
    for (std::size_t j = 0; j < b_count; ++j)
        map.b_values[j] =
            b_count == 1 ? b_min : b_min + (b_max - b_min) * static_cast<double>(j) / (b_count - 1);
    map.below.assign(a_count * b_count, 0);
    map.above.assign(a_count * b_count, 0);

    auto worker = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t i = row_begin; i < row_end; ++i) {
            for (std::size_t j = 0; j < b_count; ++j) {
                const auto report = domain_scan(stopping_for(map.a_values[i], map.b_values[j]));
                map.below[i * b_count + j] = report.violates_below ? 1 : 0;
                map.above[i * b_count + j] = report.violates_above ? 1 : 0;
            }
        }
    };

    const int n_threads = std::max(1, threads);
    if (n_threads == 1 || a_count == 1) {
        worker(0, a_count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (a_count + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            if (begin >= a_count) break;
            pool.emplace_back(worker, begin, std::min(begin + chunk, a_count));
        }
        for (auto& th : pool) th.join();
    }
    return map;
}

namespace {

// Scans the indicator over [lo, hi] to bracket the outermost flip, then
// bisects. `want_largest` picks the largest argument where the indicator is
// true (below-violation in b); otherwise the smallest (above-violation in a).
double threshold_scan(const std::function<bool(double)>& indicator, double lo, double hi,
                      double tol, bool want_largest)
{
    constexpr int kScan = 240;
    double bracket_lo = std::numeric_limits<double>::quiet_NaN();
    double bracket_hi = bracket_lo;
    bool prev = indicator(want_largest ? hi : lo);
    if (prev) return want_largest ? hi : lo;  // true at the extreme end; no flip inside
    for (int i = 1; i <= kScan; ++i) {
        const double frac = static_cast<double>(i) / kScan;
        const double x = want_largest ? hi + (lo - hi) * frac : lo + (hi - lo) * frac;
        const bool cur = indicator(x);
        if (cur != prev) {
            bracket_lo = want_largest ? x : x - (hi - lo) / kScan;
            bracket_hi = want_largest ? x + (hi - lo) / kScan : x;
            break;
        }
        prev = cur;
    }
    if (std::isnan(bracket_lo)) return std::numeric_limits<double>::quiet_NaN();
    while (bracket_hi - bracket_lo > tol) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        const bool mid_true = indicator(mid);
        if (mid_true == want_largest)
            bracket_lo = mid;
        else
            bracket_hi = mid;
    }
    return 0.5 * (bracket_lo + bracket_hi);
}

}  // namespace

double stopping_below_threshold_b(double a, double b_lo, double b_hi, double tol)
{
    auto violates = [a](double b) { return domain_scan(stopping_for(a, b)).violates_below; };
    return threshold_scan(violates, b_lo, b_hi, tol, /*want_largest=*/true);
}

double stopping_above_threshold_a(double b, double a_lo, double a_hi, double tol)
{
    auto violates = [b](double a) { return domain_scan(stopping_for(a, b)).violates_above; };
    return threshold_scan(violates, std::max(a_lo, 1e-9), a_hi, tol, /*want_largest=*/false);
}

}  // namespace qtrans
