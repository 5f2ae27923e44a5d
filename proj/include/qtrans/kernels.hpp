#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace qtrans::kernels {

/// The propagator's inner loops, as a dispatch table. One scalar reference
/// implementation always exists; AVX2 (x86-64) and NEON (aarch64) variants
/// are compiled when the toolchain supports them and selected at runtime.
/// SIMD variants must agree with the scalar reference to floating-point
/// reassociation accuracy; kernel equivalence is covered by tests/test_kernels.
struct Ops {
    /// y[i] *= a[i]
    void (*cmul_inplace)(std::complex<double>* y, const std::complex<double>* a, std::size_t n);

    /// y[i] *= s
    void (*cscale_inplace)(std::complex<double>* y, std::complex<double> s, std::size_t n);

    /// sum_i |y[i]|^2
    double (*norm2)(const std::complex<double>* y, std::size_t n);

    /// sum_i conj(a[i]) * b[i]
    std::complex<double> (*cdot)(const std::complex<double>* a, const std::complex<double>* b,
                                 std::size_t n);

    /// sum_i w[i] * |y[i]|^2
    double (*weighted_norm2)(const std::complex<double>* y, const double* w, std::size_t n);
};

enum class Backend { scalar, avx2, neon };

/// Backend picked at startup: best available SIMD variant, overridable with
/// QTRANS_KERNELS=scalar|avx2|neon in the environment.
Backend active();

/// True if the named backend was compiled in and the CPU supports it.
bool available(Backend backend);

/// Table for the active backend.
const Ops& ops();

/// Table for a specific backend; nullptr when unavailable. Used by the
/// equivalence tests to compare variants on the same machine.
const Ops* ops_for(Backend backend);

/// Force a backend (test hook). Throws std::runtime_error if unavailable.
void force(Backend backend);

std::string name(Backend backend);

}  // namespace qtrans::kernels
