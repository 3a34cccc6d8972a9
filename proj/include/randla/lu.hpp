#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "randla/matrix.hpp"
#include "randla/norms.hpp"

namespace randla {

// Triangular factors of a square matrix. With partial pivoting the row
// permutation is present and perm[i] names the input row moved to position i,
// so that (PA)(i, :) = A(perm[i], :) and PA = lower * upper. Without pivoting
// perm is absent and A = lower * upper outright; the upper diagonal then holds
// the elimination pivots in order.
template <ScalarField T>
struct LuFactors {
    Matrix<T> lower;
    Matrix<T> upper;
    std::optional<std::vector<std::size_t>> perm;

    std::vector<T> pivots() const {
        std::vector<T> p(upper.rows());
        for (std::size_t j = 0; j < upper.rows(); ++j) p[j] = upper(j, j);
        return p;
    }
};

namespace detail {
template <ScalarField T>
double abs_of(T v) {
    return std::sqrt(field<T>::abs2(v));
}
}  // namespace detail

// Elimination with pivots taken in natural order and no row exchanges. A
// pivot at or below tol_pivot(n) * ||a|| means the leading block of that order
// is numerically singular, and the factorization refuses to continue.
template <ScalarField T>
LuFactors<T> genp_factor(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("genp_factor: square input required");
    const double tol = tol_pivot(n) * spectral_norm_estimate(a);
    Matrix<T> upper = a;
    Matrix<T> lower = Matrix<T>::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        const T piv = upper(j, j);
        if (detail::abs_of(piv) <= tol) throw ZeroPivotError(j + 1);
        for (std::size_t i = j + 1; i < n; ++i) {
            const T l = upper(i, j) / piv;
            lower(i, j) = l;
            upper(i, j) = T{};
            for (std::size_t k = j + 1; k < n; ++k) upper(i, k) = upper(i, k) - l * upper(j, k);
        }
    }
    return {std::move(lower), std::move(upper), std::nullopt};
}

// Partial pivoting: swap in the largest remaining column entry at every step.
// All multipliers end up bounded by 1 in magnitude.
template <ScalarField T>
LuFactors<T> gepp_factor(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("gepp_factor: square input required");
    const double tol = tol_pivot(n) * spectral_norm_estimate(a);
    Matrix<T> u = a;
    Matrix<T> lower = Matrix<T>::identity(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = j;
        double best_mag = detail::abs_of(u(j, j));
        for (std::size_t i = j + 1; i < n; ++i) {
            const double mag = detail::abs_of(u(i, j));
            if (mag > best_mag) {
                best = i;
                best_mag = mag;
            }
        }
        if (best_mag <= tol)
            throw SingularMatrixError("gepp_factor: matrix is singular to working precision at step " +
                                      std::to_string(j + 1));
        if (best != j) {
            for (std::size_t k = 0; k < n; ++k) std::swap(u(j, k), u(best, k));
            for (std::size_t k = 0; k < j; ++k) std::swap(lower(j, k), lower(best, k));
            std::swap(perm[j], perm[best]);
        }
        const T piv = u(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            const T l = u(i, j) / piv;
            lower(i, j) = l;
            u(i, j) = T{};
            for (std::size_t k = j + 1; k < n; ++k) u(i, k) = u(i, k) - l * u(j, k);
        }
    }
    return {std::move(lower), std::move(u), std::move(perm)};
}

template <ScalarField T>
std::vector<T> lu_solve(const LuFactors<T>& f, const std::vector<T>& b) {
    const std::size_t n = f.upper.rows();
    if (b.size() != n) throw DimensionError("lu_solve: length mismatch");
    std::vector<T> y(n);
    if (f.perm) {
        for (std::size_t i = 0; i < n; ++i) y[i] = b[(*f.perm)[i]];
    } else {
        y = b;
    }
    // forward: L z = P b, unit diagonal
    for (std::size_t i = 0; i < n; ++i) {
        T acc = y[i];
        for (std::size_t k = 0; k < i; ++k) acc -= f.lower(i, k) * y[k];
        y[i] = acc;
    }
    // backward: U x = z
    for (std::size_t ii = n; ii-- > 0;) {
        T acc = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) acc -= f.upper(ii, k) * y[k];
        y[ii] = acc / f.upper(ii, ii);
    }
    return y;
}

// solves A^T x = c (plain transpose, also over the complex field) given the
// factors of A; used to form strips D B^{-1} a column at a time
template <ScalarField T>
std::vector<T> lu_solve_transpose(const LuFactors<T>& f, const std::vector<T>& c) {
    const std::size_t n = f.upper.rows();
    if (c.size() != n) throw DimensionError("lu_solve_transpose: length mismatch");
    // A^T = U^T L^T P, solve U^T w = c then L^T z = w then undo P
    std::vector<T> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        T acc = c[i];
        for (std::size_t k = 0; k < i; ++k) acc -= f.upper(k, i) * w[k];
        w[i] = acc / f.upper(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        T acc = w[ii];
        for (std::size_t k = ii + 1; k < n; ++k) acc -= f.lower(k, ii) * w[k];
        w[ii] = acc;
    }
    if (!f.perm) return w;
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[(*f.perm)[i]] = w[i];
    return x;
}

// convenience full solve
template <ScalarField T>
std::vector<T> solve_gepp(const Matrix<T>& a, const std::vector<T>& b) {
    return lu_solve(gepp_factor(a), b);
}

template <ScalarField T>
double relative_residual(const Matrix<T>& a, const std::vector<T>& x, const std::vector<T>& b) {
    const std::vector<T> ax = matvec(a, x);
    double num = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) num += field<T>::abs2(ax[i] - b[i]);
    return std::sqrt(num) / norm2(b);
}

}  // namespace randla
