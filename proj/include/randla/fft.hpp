#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "randla/matrix.hpp"

namespace randla {

// Discrete Fourier transform with the convention omega = exp(+2*pi*i/n):
// forward multiplies by Omega = (omega^{ij}), inverse by (1/n) Omega^H.
//
// Power-of-two lengths run through an iterative radix-2 kernel; other lengths
// fall back to the dense O(n^2) transform. The experiment sizes are all powers
// of two, so the fallback is a correctness convenience, not a fast path.

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// n-by-n matrix with entry (i, j) = omega^{ij}, zero-based
inline ComplexMatrix dft_dense(std::size_t n) {
    if (n < 1) throw DimensionError("dft_dense: n must be positive");
    std::vector<Complex> root(n);
    for (std::size_t k = 0; k < n; ++k)
        root[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = root[(i * j) % n];
    return out;
}

namespace detail {

// in-place radix-2, twiddle sign +1 for forward, -1 for the conjugate pass
inline void fft_pow2(std::vector<Complex>& a, double sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline std::vector<Complex> dft_dense_apply(const std::vector<Complex>& v, double sign) {
    const std::size_t n = v.size();
    std::vector<Complex> root(n);
    for (std::size_t k = 0; k < n; ++k)
        root[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    std::vector<Complex> out(n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) acc += root[(i * j) % n] * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

// Omega * v
inline std::vector<Complex> fft(std::vector<Complex> v) {
    if (v.empty()) throw DimensionError("fft: empty input");
    if (is_power_of_two(v.size())) {
        detail::fft_pow2(v, +1.0);
        return v;
    }
    return detail::dft_dense_apply(v, +1.0);
}

inline std::vector<Complex> fft(const std::vector<double>& v) { return fft(to_complex(v)); }

// Omega^{-1} * v = (1/n) Omega^H * v
inline std::vector<Complex> inverse_fft(std::vector<Complex> v) {
    if (v.empty()) throw DimensionError("inverse_fft: empty input");
    const double inv_n = 1.0 / static_cast<double>(v.size());
    if (is_power_of_two(v.size())) {
        detail::fft_pow2(v, -1.0);
    } else {
        v = detail::dft_dense_apply(v, -1.0);
    }
    for (Complex& z : v) z *= inv_n;
    return v;
}

}  // namespace randla
