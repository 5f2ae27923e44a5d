#include "qtrans/kernels.hpp"

// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against; keep them simple.

namespace qtrans::kernels {

namespace {

void cmul_inplace_scalar(std::complex<double>* y, const std::complex<double>* a, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] *= a[i];
}

void cscale_inplace_scalar(std::complex<double>* y, std::complex<double> s, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] *= s;
}

double norm2_scalar(const std::complex<double>* y, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += y[i].real() * y[i].real() + y[i].imag() * y[i].imag();
    return acc;
}

std::complex<double> cdot_scalar(const std::complex<double>* a, const std::complex<double>* b,
                                 std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double weighted_norm2_scalar(const std::complex<double>* y, const double* w, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (y[i].real() * y[i].real() + y[i].imag() * y[i].imag());
    return acc;
}

}  // namespace

extern const Ops scalar_ops;
const Ops scalar_ops = {
    cmul_inplace_scalar, cscale_inplace_scalar, norm2_scalar, cdot_scalar, weighted_norm2_scalar,
};

}  // namespace qtrans::kernels
