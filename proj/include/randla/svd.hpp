#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <vector>

#include "randla/matrix.hpp"
#include "randla/types.hpp"

namespace randla {

// Thin SVD, singular values sorted non-increasing. left is m-by-rho with
// orthonormal columns, right is n-by-rho, rho = min(m, n); over the complex
// field "orthonormal" is with respect to the conjugate inner product.
template <ScalarField T>
struct SvdResult {
    Matrix<T> left;
    std::vector<double> singulars;
    Matrix<T> right;

    Matrix<T> reconstruct() const {
        Matrix<T> scaled = left;
        for (std::size_t j = 0; j < singulars.size(); ++j)
            for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= T(singulars[j]);
        return matmul(scaled, right.adjoint());
    }
};

// r-truncation of a thin SVD: the factors carrying the r leading singular
// values and the spanning bases of the corresponding singular spaces.
template <ScalarField T>
struct TruncatedSVD {
    Matrix<T> left;                  // m-by-r
    std::vector<double> singulars;   // r leading values
    Matrix<T> right;                 // n-by-r

    Matrix<T> reconstruct() const {
        Matrix<T> scaled = left;
        for (std::size_t j = 0; j < singulars.size(); ++j)
            for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= T(singulars[j]);
        return matmul(scaled, right.adjoint());
    }
};

namespace detail {
template <ScalarField T>
using EigenDyn = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <ScalarField T>
Matrix<T> from_eigen(const Eigen::Ref<const EigenDyn<T>>& e) {
    Matrix<T> out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    out.map() = e;
    return out;
}
}  // namespace detail

// Jacobi rotations below this size, divide-and-conquer above; both satisfy
// the same result contract, the crossover is purely a speed choice.
inline constexpr std::size_t svd_jacobi_cutoff = 128;

template <ScalarField T>
SvdResult<T> svd(const Matrix<T>& a) {
    auto finish = [&](const auto& dec) {
        if (dec.info() != Eigen::Success)
            throw ConvergenceError("svd did not converge", static_cast<std::size_t>(a.rows() * 30));
        SvdResult<T> out{detail::from_eigen<T>(dec.matrixU()), {}, detail::from_eigen<T>(dec.matrixV())};
        const auto& sv = dec.singularValues();
        out.singulars.assign(sv.data(), sv.data() + sv.size());
        return out;
    };
    if (std::min(a.rows(), a.cols()) <= svd_jacobi_cutoff)
        return finish(Eigen::JacobiSVD<detail::EigenDyn<T>>(a.map(), Eigen::ComputeThinU | Eigen::ComputeThinV));
    return finish(Eigen::BDCSVD<detail::EigenDyn<T>>(a.map(), Eigen::ComputeThinU | Eigen::ComputeThinV));
}

// singular values only
template <ScalarField T>
std::vector<double> svd_values(const Matrix<T>& a) {
    auto finish = [&](const auto& dec) {
        if (dec.info() != Eigen::Success)
            throw ConvergenceError("svd did not converge", static_cast<std::size_t>(a.rows() * 30));
        const auto& sv = dec.singularValues();
        return std::vector<double>(sv.data(), sv.data() + sv.size());
    };
    if (std::min(a.rows(), a.cols()) <= svd_jacobi_cutoff)
        return finish(Eigen::JacobiSVD<detail::EigenDyn<T>>(a.map()));
    return finish(Eigen::BDCSVD<detail::EigenDyn<T>>(a.map()));
}

template <ScalarField T>
TruncatedSVD<T> truncate_svd(const SvdResult<T>& s, std::size_t r) {
    const std::size_t rho = s.singulars.size();
    if (r < 1 || r > rho) throw DimensionError("truncation rank out of range");
    TruncatedSVD<T> out{s.left.leading_block(s.left.rows(), r),
                        std::vector<double>(s.singulars.begin(), s.singulars.begin() + r),
                        s.right.leading_block(s.right.rows(), r)};
    return out;
}

}  // namespace randla
