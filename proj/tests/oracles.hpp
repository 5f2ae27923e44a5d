#pragma once

// Independent test oracles. Nothing here may call into the code paths under
// test: the DFT is the quadratic-cost definition, the classical trajectory
// oracle is an RK4 integrator, and the ground-energy oracle diagonalizes the
// finite-difference Hamiltonian by Sturm bisection.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x)
{
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(j * k % n) /
                               static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

struct ClassicalState {
    double q;
    double v;
};

/// RK4 integration of q'' = -w^2 (q - q0(t)) - g from rest at the origin.
inline ClassicalState integrate_driven_oscillator(const std::function<double(double)>& q0,
                                                  double omega, double gravity, double t_f,
                                                  int steps)
{
    ClassicalState s{0.0, 0.0};
    const double h = t_f / steps;
    auto accel = [&](double t, double q) { return -omega * omega * (q - q0(t)) - gravity; };
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const double k1q = s.v, k1v = accel(t, s.q);
        const double k2q = s.v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, s.q + 0.5 * h * k1q);
        const double k3q = s.v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, s.q + 0.5 * h * k2q);
        const double k4q = s.v + h * k3v, k4v = accel(t + h, s.q + h * k3q);
        s.q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        s.v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return s;
}

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x, via the Sturm sequence.
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x)
{
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double off2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
        d = diag[i] - x - off2 / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

/// Smallest eigenvalue of -hbar^2/2m d^2/dx^2 + V on a hard-wall grid,
/// second-order central differences.
inline double fd_ground_energy(const std::vector<double>& potential, double dx, double mass,
                               double hbar)
{
    const std::size_t n = potential.size();
    const double t = hbar * hbar / (2.0 * mass * dx * dx);
    std::vector<double> diag(n), off(n - 1, -t);
    double lo = potential[0], hi = potential[0];
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = potential[i] + 2.0 * t;
        lo = std::min(lo, potential[i]);
        hi = std::max(hi, potential[i] + 4.0 * t);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eedULL) { return std::mt19937_64(seed); }

}  // namespace oracles
