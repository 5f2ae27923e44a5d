#include "qtrans/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qtrans {

namespace {

GaussLegendreRule compute_rule(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Roots of P_n by Newton from the Chebyshev-like initial guess; the
    // derivative comes from the standard recurrence.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

namespace {

double panel_sum(const std::function<double(double)>& f, double a, double b, int panels)
{
    const GaussLegendreRule& rule = gauss_legendre(64);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += acc * half;
    }
    return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol)
{
    if (a == b) return 0.0;
    double prev = panel_sum(f, a, b, 1);
    for (int panels = 2; panels <= 1024; panels *= 2) {
        double cur = panel_sum(f, a, b, panels);
        double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    return prev;
}

double integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints, double rel_tol)
{
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate_segmented: need at least two breakpoints");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        total += integrate(f, breakpoints[i], breakpoints[i + 1], rel_tol);
    return total;
}

}  // namespace qtrans
