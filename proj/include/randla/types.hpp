#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace randla {

using Complex = std::complex<double>;

// Scalar field helpers. Everything runs over double or std::complex<double>;
// conj/abs2 are written so the same template body covers both fields.
template <typename T>
struct field {
    static constexpr bool is_complex = false;
    using real_type = T;
    static T conj(T x) { return x; }
    static double abs2(T x) { return x * x; }
    static double real(T x) { return x; }
    static double imag(T) { return 0.0; }
};

template <>
struct field<Complex> {
    static constexpr bool is_complex = true;
    using real_type = double;
    static Complex conj(Complex x) { return std::conj(x); }
    static double abs2(Complex x) { return std::norm(x); }
    static double real(Complex x) { return x.real(); }
    static double imag(Complex x) { return x.imag(); }
};

template <typename T>
concept ScalarField = std::is_same_v<T, double> || std::is_same_v<T, Complex>;

// Tolerances scale with dimension; unit roundoff times a dimensional factor.
inline double tol_orth(std::size_t m, std::size_t n) { return 1e-10 * static_cast<double>(std::max(m, n)); }
inline double tol_recon(std::size_t m, std::size_t n) { return 1e-10 * static_cast<double>(std::max(m, n)); }
inline double tol_rank(std::size_t m, std::size_t n) { return 1e-13 * static_cast<double>(std::max(m, n)); }
inline double tol_pivot(std::size_t n) { return 1e-13 * static_cast<double>(n); }

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficiencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// GENP met a pivot below tolerance at `step` (1-based): the leading block of
// that order is numerically singular.
struct ZeroPivotError : std::runtime_error {
    std::size_t step;
    explicit ZeroPivotError(std::size_t s)
        : std::runtime_error("zero pivot at elimination step " + std::to_string(s)), step(s) {}
};

struct SingularPivotBlockError : std::runtime_error {
    std::size_t position;  // index of the first row/column of the offending block
    explicit SingularPivotBlockError(std::size_t p)
        : std::runtime_error("numerically singular pivot block at position " + std::to_string(p)), position(p) {}
};

struct ConvergenceError : std::runtime_error {
    std::size_t iterations;
    ConvergenceError(const std::string& what, std::size_t it)
        : std::runtime_error(what + " (after " + std::to_string(it) + " iterations)"), iterations(it) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace randla
