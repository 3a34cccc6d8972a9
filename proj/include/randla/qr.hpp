#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "randla/matrix.hpp"
#include "randla/norms.hpp"

namespace randla {

// Canonical thin QR of a full-column-rank m-by-n matrix: q has orthonormal
// columns, r is upper triangular with strictly positive (real) diagonal, which
// makes the pair unique. A deterministic Householder reduction plus the phase
// normalization below yields bit-identical factors on repeated calls.
template <ScalarField T>
struct QrResult {
    Matrix<T> q;  // m-by-n
    Matrix<T> r;  // n-by-n
};

template <ScalarField T>
QrResult<T> qr(const Matrix<T>& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw DimensionError("qr: expected rows >= cols");
    using Dyn = detail::EigenDyn<T>;
    Eigen::HouseholderQR<Dyn> dec(a.map());
    Dyn thin_q = dec.householderQ() * Dyn::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Dyn full_r = dec.matrixQR().template triangularView<Eigen::Upper>();

    QrResult<T> out{detail::from_eigen<T>(thin_q),
                    detail::from_eigen<T>(Dyn(full_r.topRows(static_cast<Eigen::Index>(n))))};

    const double scale = spectral_norm_estimate(a);
    for (std::size_t j = 0; j < n; ++j) {
        const T d = out.r(j, j);
        const double mag = std::sqrt(field<T>::abs2(d));
        if (mag <= tol_rank(m, n) * scale)
            throw RankDeficiencyError("qr: numerically rank-deficient at column " + std::to_string(j + 1));
        const T phase = d * T(1.0 / mag);
        const T phase_conj = field<T>::conj(phase);
        // rotate column j of q by phase, row j of r by its conjugate
        for (std::size_t i = 0; i < m; ++i) out.q(i, j) *= phase;
        for (std::size_t k = j; k < n; ++k) out.r(j, k) *= phase_conj;
        out.r(j, j) = T(mag);  // exact, avoids residual imaginary dust
    }
    return out;
}

// Orthonormal range basis Q(a); the factor used throughout the range-finding
// and preprocessing paths.
template <ScalarField T>
Matrix<T> orthonormal_basis(const Matrix<T>& a) {
    return qr(a).q;
}

// Same reduction without the rank check, for callers that tolerate (or have
// already accounted for) nearly dependent columns.
template <ScalarField T>
Matrix<T> orthonormal_basis_unchecked(const Matrix<T>& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw DimensionError("qr: expected rows >= cols");
    using Dyn = detail::EigenDyn<T>;
    Eigen::HouseholderQR<Dyn> dec(a.map());
    Dyn thin_q = dec.householderQ() * Dyn::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Matrix<T> q = detail::from_eigen<T>(thin_q);
    for (std::size_t j = 0; j < n; ++j) {
        const T d = dec.matrixQR()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
        const double mag = std::sqrt(field<T>::abs2(d));
        if (mag == 0.0) continue;
        const T phase = d * T(1.0 / mag);
        for (std::size_t i = 0; i < m; ++i) q(i, j) *= phase;
    }
    return q;
}

}  // namespace randla
