#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spintex/grid.hpp"

namespace spintex::detail {

/// Radix-2 in-place complex FFT for power-of-two lengths.
///
/// forward: X_k = sum_j x_j exp(-2*pi*i*j*k/N)
/// inverse: x_j = (1/N) sum_k X_k exp(+2*pi*i*j*k/N)
///
/// Twiddles and the bit-reversal permutation are precomputed once per size,
/// so repeated transforms over an evolution loop are allocation-free.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        if (n < 2 || !std::has_single_bit(n)) {
            throw std::invalid_argument("fft: length must be a power of two >= 2");
        }
        rev_.resize(n);
        const int shift = std::countr_zero(n);
        rev_[0] = 0;
        for (std::size_t i = 1; i < n; ++i) {
            rev_[i] = (rev_[i >> 1] >> 1) | ((i & 1u) << (shift - 1));
        }
        tw_.resize(n / 2);
        const double base = -2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double a = base * static_cast<double>(j);
            tw_[j] = {std::cos(a), std::sin(a)};
        }
    }

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* a) const { transform(a, false); }

    void inverse(std::complex<double>* a) const {
        transform(a, true);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] *= s;
    }

private:
    void transform(std::complex<double>* a, bool conj_tw) const {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t r = rev_[i];
            if (i < r) std::swap(a[i], a[r]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n_ / len;
            for (std::size_t blk = 0; blk < n_; blk += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    std::complex<double> w = tw_[j * stride];
                    if (conj_tw) w = std::conj(w);
                    const std::complex<double> u = a[blk + j];
                    const std::complex<double> v = a[blk + j + half] * w;
                    a[blk + j] = u + v;
                    a[blk + j + half] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::size_t> rev_;
    std::vector<std::complex<double>> tw_;
};

/// Wavenumbers in transform order: k_j = 2*pi*j/(N*dz) for j = 0..N/2-1,
/// then the negative frequencies (the Nyquist bin carries -pi/dz).
inline std::vector<double> wavenumbers(const SpatialGrid& grid) {
    const std::size_t n = grid.n_points;
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.dz);
    for (std::size_t j = 0; j < n; ++j) {
        const auto sj = static_cast<std::ptrdiff_t>(j);
        const auto sn = static_cast<std::ptrdiff_t>(n);
        k[j] = dk * static_cast<double>(j < n / 2 ? sj : sj - sn);
    }
    return k;
}

}  // namespace spintex::detail
