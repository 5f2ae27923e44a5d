#include "qtrans/kernels.hpp"

// NEON kernels for aarch64, one complex<double> per 128-bit register.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qtrans::kernels {

namespace {

inline float64x2_t cmul(float64x2_t y, float64x2_t a)
{
    // y = <yr yi>, a = <ar ai>
    float64x2_t ar = vdupq_laneq_f64(a, 0);
    float64x2_t ai = vdupq_laneq_f64(a, 1);
    float64x2_t yswap = vextq_f64(y, y, 1);                 // <yi yr>
    const float64x2_t sign = {-1.0, 1.0};
    // <yr*ar - yi*ai, yi*ar + yr*ai>
    return vfmaq_f64(vmulq_f64(y, ar), vmulq_f64(yswap, ai), sign);
}

void cmul_inplace_neon(std::complex<double>* y, const std::complex<double>* a, std::size_t n)
{
    double* yd = reinterpret_cast<double*>(y);
    const double* ad = reinterpret_cast<const double*>(a);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        float64x2_t va = vld1q_f64(ad + 2 * i);
        vst1q_f64(yd + 2 * i, cmul(vy, va));
    }
}

void cscale_inplace_neon(std::complex<double>* y, std::complex<double> s, std::size_t n)
{
    double* yd = reinterpret_cast<double*>(y);
    const float64x2_t vs = {s.real(), s.imag()};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        vst1q_f64(yd + 2 * i, cmul(vy, vs));
    }
}

double norm2_neon(const std::complex<double>* y, std::size_t n)
{
    const double* yd = reinterpret_cast<const double*>(y);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        acc = vfmaq_f64(acc, vy, vy);
    }
    return vaddvq_f64(acc);
}

std::complex<double> cdot_neon(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    const float64x2_t sign = {1.0, -1.0};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(ad + 2 * i);             // <ar ai>
        float64x2_t vb = vld1q_f64(bd + 2 * i);             // <br bi>
        float64x2_t vbswap = vextq_f64(vb, vb, 1);          // <bi br>
        acc_re = vfmaq_f64(acc_re, va, vb);                 // <ar*br, ai*bi>
        acc_im = vfmaq_f64(acc_im, vmulq_f64(va, sign), vbswap);  // <ar*bi, -ai*br>
    }
    return {vaddvq_f64(acc_re), vaddvq_f64(acc_im)};
}

double weighted_norm2_neon(const std::complex<double>* y, const double* w, std::size_t n)
{
    const double* yd = reinterpret_cast<const double*>(y);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vy = vld1q_f64(yd + 2 * i);
        float64x2_t vw = vdupq_n_f64(w[i]);
        acc = vfmaq_f64(acc, vmulq_f64(vy, vy), vw);
    }
    return vaddvq_f64(acc);
}

}  // namespace

extern const Ops neon_ops;
const Ops neon_ops = {
    cmul_inplace_neon, cscale_inplace_neon, norm2_neon, cdot_neon, weighted_norm2_neon,
};

}  // namespace qtrans::kernels

#endif  // __aarch64__
