#pragma once

#include <functional>
#include <vector>

namespace qtrans {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule, computed once per n and cached (Newton iteration on P_n).
const GaussLegendreRule& gauss_legendre(int n);

/// Composite 64-point Gauss-Legendre over [a, b]. Starts from one panel and
/// doubles the panel count until the result changes by less than rel_tol
/// (relative to the current magnitude, with an absolute floor).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Same, but with forced panel breakpoints (for piecewise-smooth integrands).
double integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints, double rel_tol = 1e-10);

}  // namespace qtrans
