#pragma once

#include <cmath>
#include <vector>

#include "randla/fft.hpp"
#include "randla/matrix.hpp"

namespace randla {

// Circulant matrix held by its first column c, with entry (i, j) equal to
// c[(i - j) mod n]. The DFT spectrum u = Omega c diagonalizes the matrix, so
// products and solves run in O(n log n); the spectrum is computed eagerly at
// construction and never changes, which keeps instances safe to share across
// threads.
template <ScalarField T>
class CirculantMatrix {
  public:
    explicit CirculantMatrix(std::vector<T> first_column)
        : c_(std::move(first_column)), spectrum_(fft(c_)) {
        if (c_.empty()) throw DimensionError("circulant: empty first column");
    }

    std::size_t size() const { return c_.size(); }
    const std::vector<T>& first_column() const { return c_; }
    const std::vector<Complex>& spectrum() const { return spectrum_; }

    T entry(std::size_t i, std::size_t j) const { return c_[(i + c_.size() - j) % c_.size()]; }

    Matrix<T> dense() const {
        const std::size_t n = c_.size();
        Matrix<T> out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = entry(i, j);
        return out;
    }

    // circulant with first column c~ where c~[i] = c[(-i) mod n]; its dense
    // expansion is the plain transpose of this one
    CirculantMatrix transposed() const {
        const std::size_t n = c_.size();
        std::vector<T> rev(n);
        for (std::size_t i = 0; i < n; ++i) rev[i] = c_[(n - i) % n];
        return CirculantMatrix(std::move(rev));
    }

  private:
    std::vector<T> c_;
    std::vector<Complex> spectrum_;
};

using RealCirculant = CirculantMatrix<double>;
using ComplexCirculant = CirculantMatrix<Complex>;

namespace detail {

inline std::vector<double> strip_imag(const std::vector<Complex>& z, double scale) {
    double imag2 = 0.0, full2 = 0.0;
    for (const Complex& v : z) {
        imag2 += v.imag() * v.imag();
        full2 += std::norm(v);
    }
    if (std::sqrt(imag2) > 1e-11 * (std::sqrt(full2) + scale))
        throw std::logic_error("real circulant product produced non-negligible imaginary part");
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
    return out;
}

template <ScalarField T>
std::vector<Complex> spectral_apply(const CirculantMatrix<T>& c, const std::vector<Complex>& x) {
    std::vector<Complex> y = fft(x);
    const auto& u = c.spectrum();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= u[i];
    return inverse_fft(std::move(y));
}

}  // namespace detail

// C * x computed as Omega^{-1} (u .* (Omega x))
inline std::vector<Complex> circulant_apply(const ComplexCirculant& c, const std::vector<Complex>& x) {
    if (x.size() != c.size()) throw DimensionError("circulant_apply: length mismatch");
    return detail::spectral_apply(c, x);
}

// real first column and real input stay real; the imaginary dust from the
// complex transform is checked and stripped
inline std::vector<double> circulant_apply(const RealCirculant& c, const std::vector<double>& x) {
    if (x.size() != c.size()) throw DimensionError("circulant_apply: length mismatch");
    double scale = 0.0;
    for (double v : c.first_column()) scale = std::max(scale, std::abs(v));
    return detail::strip_imag(detail::spectral_apply(c, to_complex(x)), scale * norm2(x));
}

inline std::vector<Complex> circulant_apply(const RealCirculant& c, const std::vector<Complex>& x) {
    if (x.size() != c.size()) throw DimensionError("circulant_apply: length mismatch");
    return detail::spectral_apply(c, x);
}

// smallest and largest spectrum magnitudes, the singular values of the matrix
template <ScalarField T>
std::pair<double, double> spectrum_range(const CirculantMatrix<T>& c) {
    double lo = std::abs(c.spectrum().front()), hi = lo;
    for (const Complex& u : c.spectrum()) {
        lo = std::min(lo, std::abs(u));
        hi = std::max(hi, std::abs(u));
    }
    return {lo, hi};
}

template <ScalarField T>
bool circulant_is_singular(const CirculantMatrix<T>& c) {
    auto [lo, hi] = spectrum_range(c);
    return lo <= tol_rank(c.size(), c.size()) * hi;
}

namespace detail {
template <ScalarField T>
std::vector<Complex> spectral_solve(const CirculantMatrix<T>& c, const std::vector<Complex>& b) {
    if (b.size() != c.size()) throw DimensionError("circulant_solve: length mismatch");
    if (circulant_is_singular(c)) throw SingularMatrixError("circulant is numerically singular");
    std::vector<Complex> y = fft(b);
    const auto& u = c.spectrum();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] /= u[i];
    return inverse_fft(std::move(y));
}
}  // namespace detail

// C^{-1} b via spectral division
inline std::vector<Complex> circulant_solve(const ComplexCirculant& c, const std::vector<Complex>& b) {
    return detail::spectral_solve(c, b);
}

inline std::vector<double> circulant_solve(const RealCirculant& c, const std::vector<double>& b) {
    double scale = 0.0;
    for (double v : c.first_column()) scale = std::max(scale, std::abs(v));
    auto [lo, hi] = spectrum_range(c);
    (void)hi;
    const double bscale = (lo > 0.0) ? norm2(b) / lo : norm2(b);
    return detail::strip_imag(detail::spectral_solve(c, to_complex(b)), bscale);
}

// leading k-by-l block view of a circulant; constant along diagonals
template <ScalarField T>
class ToeplitzBlock {
  public:
    ToeplitzBlock(CirculantMatrix<T> parent, std::size_t rows, std::size_t cols)
        : parent_(std::move(parent)), rows_(rows), cols_(cols) {
        if (rows == 0 || cols == 0 || rows > parent_.size() || cols > parent_.size())
            throw DimensionError("toeplitz block exceeds parent dimensions");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const CirculantMatrix<T>& parent() const { return parent_; }

    T entry(std::size_t i, std::size_t j) const { return parent_.entry(i, j); }

    Matrix<T> dense() const {
        Matrix<T> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = entry(i, j);
        return out;
    }

  private:
    CirculantMatrix<T> parent_;
    std::size_t rows_, cols_;
};

// A * C, one transposed-circulant application per row of A
template <ScalarField TA, ScalarField TC>
auto matmul_by_circulant(const Matrix<TA>& a, const CirculantMatrix<TC>& c) {
    using TOut = std::conditional_t<field<TA>::is_complex || field<TC>::is_complex, Complex, double>;
    if (a.cols() != c.size()) throw DimensionError("matmul_by_circulant: shape mismatch");
    const auto ct = c.transposed();
    Matrix<TOut> out(a.rows(), c.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<TOut> row(a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j) row[j] = TOut(a(i, j));
        const auto prod = circulant_apply(ct, row);
        for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = prod[j];
    }
    return out;
}

// A * T for a leading k-by-l Toeplitz block T: pad each row of A to the parent
// size, run it through the parent circulant, truncate to l columns
template <ScalarField TA, ScalarField TC>
auto matmul_by_toeplitz_block(const Matrix<TA>& a, const ToeplitzBlock<TC>& t) {
    using TOut = std::conditional_t<field<TA>::is_complex || field<TC>::is_complex, Complex, double>;
    if (a.cols() != t.rows()) throw DimensionError("matmul_by_toeplitz_block: shape mismatch");
    const std::size_t n = t.parent().size();
    const auto ct = t.parent().transposed();
    Matrix<TOut> out(a.rows(), t.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<TOut> row(n, TOut{});
        for (std::size_t j = 0; j < a.cols(); ++j) row[j] = TOut(a(i, j));
        const auto prod = circulant_apply(ct, row);
        for (std::size_t j = 0; j < t.cols(); ++j) out(i, j) = prod[j];
    }
    return out;
}

}  // namespace randla
