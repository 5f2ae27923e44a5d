#include "qtrans/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qtrans {

Fft::Fft(std::size_t n) : n_(n)
{
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument("fft: size must be a power of two >= 2");

    const int bits = std::countr_zero(n);
    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = r;
    }

    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::transform(std::complex<double>* data, bool inverse) const
{
    for (std::size_t i = 0; i < n_; ++i)
        if (bitrev_[i] > i) std::swap(data[i], data[bitrev_[i]]);

    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t stride = n_ / len;  // twiddle index step for this stage
        const std::size_t half = len >> 1;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> w = twiddle_[j * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> even = data[start + j];
                const std::complex<double> odd = w * data[start + j + half];
                data[start + j] = even + odd;
                data[start + j + half] = even - odd;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) data[i] *= inv;
    }
}

void Fft::forward(std::complex<double>* data) const { transform(data, false); }
void Fft::inverse(std::complex<double>* data) const { transform(data, true); }

std::vector<double> fft_wavenumbers(std::size_t n, double dx)
{
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    for (std::size_t j = 0; j < n; ++j) {
        const auto f = (j < n / 2) ? static_cast<double>(j)
                                   : static_cast<double>(j) - static_cast<double>(n);
        k[j] = f * dk;
    }
    return k;
}

}  // namespace qtrans
