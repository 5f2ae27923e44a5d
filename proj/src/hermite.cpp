#include "qtrans/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtrans {

double oscillator_eigenfunction(int n, double xi, const PhysicalParams& params)
{
    if (n < 0 || n > kMaxOscillatorLevel)
        throw std::invalid_argument("oscillator_eigenfunction: n out of range");

    const double alpha = std::sqrt(params.mass * params.omega0 / params.hbar);  // 1/length
    const double u = alpha * xi;

    // The Gaussian tail underflows long before the Hermite factor could
    // bring the product back into range; bail out before the polynomial
    // recurrence can overflow.
    if (0.5 * u * u > 800.0) return 0.0;

    // h_n(u) = H_n(u) exp(-u^2/2) / sqrt(2^n n! sqrt(pi)), built so every
    // iterate stays O(1).
    double h_prev = 0.0;
    double h = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
    for (int k = 0; k < n; ++k) {
        const double h_next =
            std::sqrt(2.0 / (k + 1.0)) * u * h - std::sqrt(static_cast<double>(k) / (k + 1.0)) * h_prev;
        h_prev = h;
        h = h_next;
    }
    return std::sqrt(alpha) * h;
}

double oscillator_energy(int n, const PhysicalParams& params)
{
    return (n + 0.5) * params.hbar * params.omega0;
}

}  // namespace qtrans
