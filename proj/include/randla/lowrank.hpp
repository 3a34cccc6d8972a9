#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "randla/circulant.hpp"
#include "randla/matrix.hpp"
#include "randla/multipliers.hpp"
#include "randla/norms.hpp"
#include "randla/qr.hpp"
#include "randla/svd.hpp"

namespace randla {

// Output of the randomized range finder: an orthonormal sketch basis q of
// width l = rank + oversample. The rank-l approximation Q Q^H A is applied on
// demand; the m-by-m projector itself is only materialized by the test helper
// below, and only at small sizes.
template <ScalarField T>
struct LowRankResult {
    Matrix<T> q;  // m-by-l, orthonormal columns
    std::size_t rank = 0;
    std::size_t oversample = 0;
    std::size_t power_steps = 0;

    std::size_t sketch_width() const { return q.cols(); }

    std::vector<T> apply_projection(const std::vector<T>& v) const {
        return matvec(q, matvec(q.adjoint(), v));
    }

    // Q (Q^H A) without forming the projector
    Matrix<T> apply_approximation(const Matrix<T>& a) const {
        return matmul(q, matmul(q.adjoint(), a));
    }

    Matrix<T> projector_dense() const {
        if (q.rows() > 2048) throw DimensionError("projector materialization capped at 2048");
        return matmul(q, q.adjoint());
    }
};

// Range finder on a supplied sketch matrix; power_steps applies the
// alternating products that sharpen the spectral gap (the sketch becomes
// (A A^H)^i A H without any dense power ever formed). Plain alternation, no
// re-orthonormalization between steps: adequate for the small step counts
// used here, while larger counts would lose accuracy to rounding.
template <ScalarField T>
LowRankResult<T> range_find_with(const Matrix<T>& a, Matrix<T> sketch, std::size_t r, std::size_t p,
                                 std::size_t power_steps) {
    if (r < 1 || r + p > std::min(a.rows(), a.cols()))
        throw DimensionError("range_find: rank plus oversampling exceeds matrix size");
    for (std::size_t s = 0; s < power_steps; ++s) sketch = matmul(a, matmul(a.adjoint(), sketch));
    return LowRankResult<T>{orthonormal_basis(sketch), r, p, power_steps};
}

// Multiplier drawn from the spec; Toeplitz sketches run through the parent
// circulant. A rank-deficient sketch surfaces as the qr error, and the caller
// retries with a fresh seed.
template <ScalarField T>
LowRankResult<T> range_find(const Matrix<T>& a, std::size_t r, std::size_t p, MultiplierSpec spec,
                            std::size_t power_steps) {
    const std::size_t n = a.cols(), l = r + p;
    if (r < 1 || l > std::min(a.rows(), a.cols()))
        throw DimensionError("range_find: rank plus oversampling exceeds matrix size");
    spec.rows = n;
    spec.cols = l;
    Matrix<T> sketch(1, 1);
    if (spec.kind == MultiplierKind::ToeplitzBlock) {
        if (spec.variant == ToeplitzVariant::Real) {
            sketch = matmul_by_toeplitz_block(a, gen_real_toeplitz_block(n, l, spec.seed));
        } else if constexpr (field<T>::is_complex) {
            sketch = matmul_by_toeplitz_block(a, gen_unitary_toeplitz_block(n, l, spec.seed));
        } else {
            throw DimensionError("complex multiplier family requested in a real pipeline");
        }
    } else {
        sketch = matmul(a, materialize<T>(spec));
    }
    return range_find_with(a, std::move(sketch), r, p, power_steps);
}

struct SubspaceResiduals {
    double rn1 = 0.0;  // projection residual of the leading left singular basis
    double rn2 = 0.0;  // ||A - Q Q^H A||
};

// ||Q (Q^H S_r) - S_r||: how far the sketch basis is from reproducing the
// leading left singular basis
template <ScalarField T>
double basis_residual(const LowRankResult<T>& result, const TruncatedSVD<T>& truth) {
    const Matrix<T> y = matmul(result.q.adjoint(), truth.left);
    const Matrix<T> diff = matmul(result.q, y) - truth.left;
    return spectral_norm(diff);
}

template <ScalarField T>
double approximation_residual(const Matrix<T>& a, const LowRankResult<T>& result) {
    return spectral_norm(a - result.apply_approximation(a));
}

template <ScalarField T>
SubspaceResiduals subspace_residual(const Matrix<T>& a, const LowRankResult<T>& result,
                                    const TruncatedSVD<T>& truth) {
    return {basis_residual(result, truth), approximation_residual(a, result)};
}

inline TruncatedSVD<Complex> to_complex(const TruncatedSVD<double>& t) {
    return {to_complex(t.left), t.singulars, to_complex(t.right)};
}

// expected-error reference values, defined only for oversampling p >= 2
struct ReferenceBounds {
    double frobenius = 0.0;
    double spectral = 0.0;
    double spectral_simplified = 0.0;
};

// Deterministic error bounds of the sketch H against the spectrum of A:
//   delta_plus       = sqrt(2) ||H||_F ||(T_r^H H)^+|| sigma_{r+1} / sigma_r
//   delta_plus_prime = sigma_{r+1} + 2 delta_plus ||A||
// bounding the basis residual rn1 and the approximation residual rn2 up to
// higher-order terms.
struct BoundReport {
    double delta_plus = 0.0;
    double delta_plus_prime = 0.0;
    double sigma_r = 0.0;
    double sigma_r1 = 0.0;
    double h_frobenius = 0.0;
    double t_h_inv_norm = 0.0;
    std::optional<ReferenceBounds> reference;
};

template <ScalarField T>
BoundReport error_bounds_from_parts(const Matrix<T>& t_r, const std::vector<double>& singulars,
                                    const Matrix<T>& h, std::size_t r) {
    if (r < 1 || r > singulars.size()) throw DimensionError("error_bounds: rank out of range");
    if (t_r.cols() != r || t_r.rows() != h.rows()) throw DimensionError("error_bounds: shape mismatch");
    if (h.cols() < r) throw DimensionError("error_bounds: sketch narrower than rank");
    BoundReport rep;
    rep.sigma_r = singulars[r - 1];
    rep.sigma_r1 = (r < singulars.size()) ? singulars[r] : 0.0;
    rep.h_frobenius = frobenius_norm(h);

    const auto gsv = svd_values(matmul(t_r.adjoint(), h));
    if (gsv.back() <= 0.0)
        throw SingularMatrixError("unlucky multiplier: T_r^H H is singular, the bound is undefined");
    rep.t_h_inv_norm = 1.0 / gsv.back();

    rep.delta_plus = std::numbers::sqrt2 * rep.h_frobenius * rep.t_h_inv_norm * rep.sigma_r1 / rep.sigma_r;
    rep.delta_plus_prime = rep.sigma_r1 + 2.0 * rep.delta_plus * singulars.front();

    const std::size_t p = h.cols() - r;
    if (p >= 2) {
        double tail = 0.0;
        for (std::size_t j = r; j < singulars.size(); ++j) tail += singulars[j] * singulars[j];
        const double rd = static_cast<double>(r), pd = static_cast<double>(p);
        ReferenceBounds ref;
        ref.frobenius = std::sqrt(1.0 + rd / (pd - 1.0)) * std::sqrt(tail);
        ref.spectral = (1.0 + std::sqrt(rd / (pd - 1.0))) * rep.sigma_r1 +
                       (std::numbers::e * std::sqrt(rd + pd) / pd) * std::sqrt(tail);
        ref.spectral_simplified =
            (1.0 + 4.0 * std::sqrt(rd + pd) / (pd - 1.0) * std::sqrt(static_cast<double>(singulars.size()))) *
            rep.sigma_r1;
        rep.reference = ref;
    }
    return rep;
}

template <ScalarField T>
BoundReport error_bounds(const SvdResult<T>& a_svd, const Matrix<T>& h, std::size_t r) {
    if (r < 1 || r > a_svd.singulars.size()) throw DimensionError("error_bounds: rank out of range");
    return error_bounds_from_parts(a_svd.right.leading_block(a_svd.right.rows(), r), a_svd.singulars, h, r);
}

// A-posteriori estimate 10 sqrt(2/pi) max_j ||(A - Q Q^H A) g_j|| over
// r_probes independent Gaussian probe vectors; an upper bound on the true
// residual norm with probability at least 1 - 10^{-r_probes}.
template <ScalarField T>
double posterior_estimate(const Matrix<T>& a, const LowRankResult<T>& result, std::size_t r_probes,
                          std::uint64_t seed) {
    if (r_probes < 1) throw DimensionError("posterior_estimate: need at least one probe");
    double worst = 0.0;
    for (std::size_t j = 0; j < r_probes; ++j) {
        RngStream stream = RngStream(seed).derived(j + 1);
        std::vector<T> g(a.cols());
        for (auto& v : g) v = T(stream.next_gaussian());
        const std::vector<T> ag = matvec(a, g);
        const std::vector<T> proj = result.apply_projection(ag);
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < ag.size(); ++i) norm_sq += field<T>::abs2(ag[i] - proj[i]);
        worst = std::max(worst, std::sqrt(norm_sq));
    }
    return 10.0 * std::sqrt(2.0 / std::numbers::pi) * worst;
}

enum class SketchVariant { Srft, CirculantPermutation };

struct SrftCheckResult {
    double residual = 0.0;      // ||(I - P_Y) A||
    double bound = 0.0;         // sqrt(1 + 7 n / l) sigma_{r+1}
    std::size_t sketch_width = 0;
    bool clamped = false;  // the prescribed width reached n and was cut back
};

// Runs the sampled-transform sketch at the width its guarantee prescribes,
// l = ceil(4 (sqrt(r) + sqrt(8 log(r n) n))^2 log(r)), clamped to n whenever
// the formula exceeds the dimension (it does at every size this harness
// runs). The CirculantPermutation variant replaces the transform by the same
// sampled columns of the unitary circulant it folds into, which leaves the
// sketch range distribution unchanged. The residual norm is evaluated by
// power iteration; the basis skips the rank check since the clamped sketch is
// square and unitary up to column scaling.
template <ScalarField T>
SrftCheckResult srft_sketch_check(const Matrix<T>& a, std::size_t r, std::uint64_t seed,
                                  SketchVariant variant = SketchVariant::Srft,
                                  std::optional<double> known_sigma_r1 = std::nullopt) {
    const std::size_t n = a.cols();
    if (r < 1 || r > n) throw DimensionError("srft_sketch_check: rank out of range");
    const double nd = static_cast<double>(n), rd = static_cast<double>(r);
    const double base = std::sqrt(rd) + std::sqrt(8.0 * std::log(rd * nd) * nd);
    const double prescribed = 4.0 * base * base * std::log(rd);
    SrftCheckResult out;
    std::size_t l = (prescribed > 0.0) ? static_cast<std::size_t>(std::ceil(prescribed)) : 0;
    l = std::max(l, r);
    if (l >= n) {
        l = n;
        out.clamped = true;
    }
    out.sketch_width = l;

    ComplexMatrix s(1, 1);
    if (variant == SketchVariant::Srft) {
        s = gen_srft(n, l, seed);
    } else {
        RngStream rng(seed);
        std::vector<Complex> u(n);
        for (Complex& v : u) v = std::polar(1.0, 2.0 * std::numbers::pi * rng.next_double());
        const ComplexCirculant circ(inverse_fft(std::move(u)));
        const auto cols = srft_columns(n, l, seed);
        s = ComplexMatrix(n, l);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < l; ++j) s(i, j) = circ.entry(i, cols[j]);
    }

    const ComplexMatrix ac = to_complex(a);
    const ComplexMatrix q = orthonormal_basis_unchecked(matmul(ac, s));
    const ComplexMatrix resid = ac - matmul(q, matmul(q.adjoint(), ac));
    out.residual = spectral_norm_estimate(resid);
    double sigma_r1;
    if (known_sigma_r1) {
        sigma_r1 = *known_sigma_r1;
    } else {
        const auto sv = svd_values(a);
        sigma_r1 = (r < sv.size()) ? sv[r] : 0.0;
    }
    out.bound = std::sqrt(1.0 + 7.0 * nd / static_cast<double>(l)) * sigma_r1;
    return out;
}

// gauge fix for comparing orthonormal factors: rotate each column so its
// largest-magnitude entry is real and positive
template <ScalarField T>
void canonicalize_columns(Matrix<T>& q) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < q.rows(); ++i) {
            const double mag = field<T>::abs2(q(i, j));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        const double mag = std::sqrt(best);
        if (mag == 0.0) continue;
        const T phase = field<T>::conj(q(imax, j)) * T(1.0 / mag);
        for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) *= phase;
    }
}

}  // namespace randla
