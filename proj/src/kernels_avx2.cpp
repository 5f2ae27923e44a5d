#include "qtrans/kernels.hpp"

// AVX2+FMA kernels, two complex<double> lanes per 256-bit register. This
// translation unit is compiled with -mavx2 -mfma; it must only be entered
// after a runtime cpuid check (see kernels.cpp).

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qtrans::kernels {

namespace {

// <r0 i0 r1 i1> * <ar0 ai0 ar1 ai1> per lane pair:
//   re = yr*ar - yi*ai, im = yr*ai + yi*ar
inline __m256d cmul(__m256d y, __m256d a)
{
    __m256d ar = _mm256_movedup_pd(a);                       // <ar0 ar0 ar1 ar1>
    __m256d ai = _mm256_permute_pd(a, 0b1111);               // <ai0 ai0 ai1 ai1>
    __m256d yswap = _mm256_permute_pd(y, 0b0101);            // <i0 r0 i1 r1>
    return _mm256_fmaddsub_pd(y, ar, _mm256_mul_pd(yswap, ai));
}

void cmul_inplace_avx2(std::complex<double>* y, const std::complex<double>* a, std::size_t n)
{
    double* yd = reinterpret_cast<double*>(y);
    const double* ad = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        __m256d va = _mm256_loadu_pd(ad + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul(vy, va));
    }
    for (; i < n; ++i) y[i] *= a[i];
}

void cscale_inplace_avx2(std::complex<double>* y, std::complex<double> s, std::size_t n)
{
    double* yd = reinterpret_cast<double*>(y);
    const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul(vy, vs));
    }
    for (; i < n; ++i) y[i] *= s;
}

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double norm2_avx2(const std::complex<double>* y, std::size_t n)
{
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_fmadd_pd(vy, vy, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        total += y[i].real() * y[i].real() + y[i].imag() * y[i].imag();
    return total;
}

std::complex<double> cdot_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ad + 2 * i);          // <ar0 ai0 ar1 ai1>
        __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        __m256d vbswap = _mm256_permute_pd(vb, 0b0101);    // <bi0 br0 bi1 br1>
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);          // ar*br + ai*bi (pairwise)
        acc_im = _mm256_fmadd_pd(va, vbswap, acc_im);      // ar*bi + ai*br (pairwise, sign below)
    }
    // acc_re lanes: <ar0*br0, ai0*bi0, ...> -> re = sum of all lanes
    double re = hsum(acc_re);
    // acc_im lanes: <ar0*bi0, ai0*br0, ...> -> im = sum(even) - sum(odd)
    __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double im = hsum(_mm256_mul_pd(acc_im, sign));
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double weighted_norm2_avx2(const std::complex<double>* y, const double* w, std::size_t n)
{
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        __m128d vw2 = _mm_loadu_pd(w + i);
        __m256d vw = _mm256_permute4x64_pd(_mm256_castpd128_pd256(vw2), 0b01010000);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(vy, vy), vw, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        total += w[i] * (y[i].real() * y[i].real() + y[i].imag() * y[i].imag());
    return total;
}

}  // namespace

extern const Ops avx2_ops;
const Ops avx2_ops = {
    cmul_inplace_avx2, cscale_inplace_avx2, norm2_avx2, cdot_avx2, weighted_norm2_avx2,
};

}  // namespace qtrans::kernels

#endif  // __AVX2__ && __FMA__
