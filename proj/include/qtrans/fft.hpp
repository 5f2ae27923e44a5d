#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qtrans {

/// In-place radix-2 complex FFT with precomputed twiddles. Sizes are powers
/// of two (enforced by NumericsConfig). Forward transform is unnormalized,
/// X_k = sum_j x_j exp(-2*pi*i*j*k/n); inverse includes the 1/n factor.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    void forward(std::vector<std::complex<double>>& data) const { forward(data.data()); }
    void inverse(std::vector<std::complex<double>>& data) const { inverse(data.data()); }

private:
    void transform(std::complex<double>* data, bool inverse) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;  // exp(-i pi k / (n/2)), k = 0 .. n/2-1
};

/// Angular wavenumbers in FFT bin order: k_j = 2*pi*f_j/(n*dx) with
/// f_j = j for j < n/2 and j - n otherwise.
std::vector<double> fft_wavenumbers(std::size_t n, double dx);

}  // namespace qtrans
