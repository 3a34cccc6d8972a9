#pragma once

#include <algorithm>
#include <cmath>

#include "randla/matrix.hpp"
#include "randla/svd.hpp"

namespace randla {

template <ScalarField T>
double spectral_norm(const Matrix<T>& a) {
    return svd_values(a).front();
}

// 1/sigma_min; errors out on an exactly singular input
template <ScalarField T>
double pseudo_inverse_norm(const Matrix<T>& a) {
    const double smin = svd_values(a).back();
    if (smin == 0.0) throw SingularMatrixError("pseudo-inverse norm of an exactly singular matrix");
    return 1.0 / smin;
}

template <ScalarField T>
double condition_number(const Matrix<T>& a) {
    const auto sv = svd_values(a);
    if (sv.back() == 0.0) throw SingularMatrixError("condition number of an exactly singular matrix");
    return sv.front() / sv.back();
}

// Cheap spectral-norm estimate (power iteration on A^H A from a fixed start
// vector, so the result is deterministic). Used for pivot and rank thresholds
// where an exact sigma_1 would cost a full SVD per factorization. The estimate
// is floored by the largest column and row norms, which never exceed sigma_1.
template <ScalarField T>
double spectral_norm_estimate(const Matrix<T>& a) {
    const std::size_t m = a.rows(), n = a.cols();
    double floor_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += field<T>::abs2(a(i, j));
        floor_norm = std::max(floor_norm, s);
    }
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += field<T>::abs2(a(i, j));
        floor_norm = std::max(floor_norm, s);
    }
    floor_norm = std::sqrt(floor_norm);
    if (floor_norm == 0.0) return 0.0;

    std::vector<T> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = T(1.0 + static_cast<double>(j) / (static_cast<double>(n) + 1.0));
    double nx = norm2(x);
    for (auto& v : x) v = T(1.0 / nx) * v;

    double est = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<T> ax = matvec(a, x);
        const double nax = norm2(ax);
        if (nax == 0.0) break;
        // x <- A^H (A x), renormalized
        std::vector<T> y(n, T{});
        for (std::size_t i = 0; i < m; ++i) {
            const T axi = ax[i];
            for (std::size_t j = 0; j < n; ++j) y[j] += field<T>::conj(a(i, j)) * axi;
        }
        const double ny = norm2(y);
        if (ny == 0.0) break;
        for (std::size_t j = 0; j < n; ++j) x[j] = T(1.0 / ny) * y[j];
        if (std::abs(nax - est) <= 1e-9 * nax) {
            est = nax;
            break;
        }
        est = nax;
    }
    return std::max(est, floor_norm);
}

}  // namespace randla
