#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "randla/types.hpp"

namespace randla {

// Dense row-major matrix over double or complex<double>. Immutable-by-value
// style: operations return fresh matrices, nothing mutates shared state.
template <ScalarField T>
class Matrix {
  public:
    using value_type = T;
    using EigenMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    using ConstEigenMap =
        Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
        if (entries_.size() != rows * cols) throw DimensionError("entry count does not match rows*cols");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<T>& entries() const { return entries_; }
    T* data() { return entries_.data(); }
    const T* data() const { return entries_.data(); }

    EigenMap map() { return EigenMap(entries_.data(), rows_, cols_); }
    ConstEigenMap map() const { return ConstEigenMap(entries_.data(), rows_, cols_); }

    // northwestern k-by-l submatrix
    Matrix leading_block(std::size_t k, std::size_t l) const {
        if (k == 0 || l == 0 || k > rows_ || l > cols_)
            throw DimensionError("leading block exceeds matrix dimensions");
        Matrix out(k, l);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < l; ++j) out(i, j) = (*this)(i, j);
        return out;
    }

    Matrix block(std::size_t row0, std::size_t col0, std::size_t k, std::size_t l) const {
        if (row0 + k > rows_ || col0 + l > cols_) throw DimensionError("block exceeds matrix dimensions");
        Matrix out(k, l);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < l; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
        return out;
    }

    void set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
        if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_)
            throw DimensionError("block exceeds matrix dimensions");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    // conjugate transpose; plain transpose over the reals
    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = field<T>::conj((*this)(i, j));
        return out;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> entries_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

template <ScalarField T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    Matrix<T> out(a.rows(), b.cols());
    out.map().noalias() = a.map() * b.map();
    return out;
}

template <ScalarField T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    out.map() = a.map() + b.map();
    return out;
}

template <ScalarField T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("sub: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    out.map() = a.map() - b.map();
    return out;
}

template <ScalarField T, typename S>
Matrix<T> operator*(S scalar, const Matrix<T>& a) {
    Matrix<T> out(a.rows(), a.cols());
    out.map() = T(scalar) * a.map();
    return out;
}

template <ScalarField T>
std::vector<T> matvec(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: shape mismatch");
    std::vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <ScalarField T>
double frobenius_norm(const Matrix<T>& a) {
    double s = 0.0;
    for (const T& v : a.entries()) s += field<T>::abs2(v);
    return std::sqrt(s);
}

template <ScalarField T>
double max_abs(const Matrix<T>& a) {
    double m = 0.0;
    for (const T& v : a.entries()) m = std::max(m, std::sqrt(field<T>::abs2(v)));
    return m;
}

template <ScalarField T>
double norm2(const std::vector<T>& v) {
    double s = 0.0;
    for (const T& x : v) s += field<T>::abs2(x);
    return std::sqrt(s);
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Complex(a(i, j), 0.0);
    return out;
}

inline const ComplexMatrix& to_complex(const ComplexMatrix& a) { return a; }

inline std::vector<Complex> to_complex(const std::vector<double>& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Complex(v[i], 0.0);
    return out;
}

}  // namespace randla
