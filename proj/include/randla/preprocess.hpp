#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "randla/circulant.hpp"
#include "randla/lu.hpp"
#include "randla/multipliers.hpp"

namespace randla {

template <ScalarField T>
struct SolveOutcome {
    std::vector<T> x;
    std::vector<double> residual_history;  // ||Ax - b|| / ||b|| after the solve and each refinement
    bool diverged = false;
};

// One side of the preprocessing A -> F A H. Circulant families keep their
// structured form so products run through the FFT; everything else is dense.
template <ScalarField T>
class SideMultiplier {
  public:
    static SideMultiplier identity() { return SideMultiplier(); }

    static SideMultiplier make(MultiplierSpec spec, std::size_t n) {
        if (spec.rows == 0) spec.rows = n;
        if (spec.cols == 0) spec.cols = n;
        if (spec.rows != n || spec.cols != n)
            throw DimensionError("solve preprocessing takes square n-by-n multipliers");
        SideMultiplier out;
        switch (spec.kind) {
            case MultiplierKind::None:
                return out;
            case MultiplierKind::RealCirculant:
                out.real_circ_.emplace(gen_real_circulant(n, spec.seed));
                return out;
            case MultiplierKind::UnitaryCirculant:
                if constexpr (field<T>::is_complex) {
                    out.complex_circ_.emplace(gen_unitary_circulant(n, spec.seed));
                    return out;
                }
                break;
            case MultiplierKind::ToeplitzBlock:
                if (spec.variant == ToeplitzVariant::Real) {
                    out.real_circ_.emplace(gen_real_circulant(n, spec.seed));
                    return out;
                }
                if constexpr (field<T>::is_complex) {
                    out.complex_circ_.emplace(gen_unitary_circulant(n, spec.seed));
                    return out;
                }
                break;
            default:
                out.dense_.emplace(materialize<T>(spec));
                return out;
        }
        throw DimensionError("complex multiplier family requested in a real pipeline");
    }

    bool is_identity() const { return !dense_ && !real_circ_ && !complex_circ_; }

    // A * H
    Matrix<T> right_multiply(const Matrix<T>& a) const {
        if (is_identity()) return a;
        if (dense_) return matmul(a, *dense_);
        if (real_circ_) {
            auto prod = matmul_by_circulant(a, *real_circ_);
            return coerce(std::move(prod));
        }
        return coerce(matmul_by_circulant(a, *complex_circ_));
    }

    // F * A, column by column for the structured forms
    Matrix<T> left_multiply(const Matrix<T>& a) const {
        if (is_identity()) return a;
        if (dense_) return matmul(*dense_, a);
        Matrix<T> out(a.rows(), a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const std::vector<T> prod = apply_vec(a.col(j));
            for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = prod[i];
        }
        return out;
    }

    // H * v
    std::vector<T> apply_vec(const std::vector<T>& v) const {
        if (is_identity()) return v;
        if (dense_) return matvec(*dense_, v);
        if (real_circ_) return circulant_apply(*real_circ_, v);
        if constexpr (field<T>::is_complex) return circulant_apply(*complex_circ_, v);
        throw std::logic_error("unreachable multiplier state");
    }

  private:
    SideMultiplier() = default;

    template <typename M>
    static Matrix<T> coerce(M&& m) {
        if constexpr (std::is_same_v<std::decay_t<M>, Matrix<T>>)
            return std::forward<M>(m);
        else
            throw std::logic_error("unreachable multiplier field mix");
    }

    std::optional<Matrix<T>> dense_;
    std::optional<RealCirculant> real_circ_;
    std::optional<ComplexCirculant> complex_circ_;
};

// Residual-correction loop on A x = b reusing one factorization through the
// supplied solver. Residuals are computed in working precision. Two
// consecutive residual increases set the divergence flag and stop the loop.
template <ScalarField T>
SolveOutcome<T> iterative_refine(const Matrix<T>& a,
                                 const std::function<std::vector<T>(const std::vector<T>&)>& solver,
                                 const std::vector<T>& b, std::vector<T> x0, std::size_t steps) {
    SolveOutcome<T> out;
    out.x = std::move(x0);
    const double bnorm = norm2(b);
    auto residual = [&](const std::vector<T>& x) {
        std::vector<T> r = matvec(a, x);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
        return r;
    };
    std::vector<T> r = residual(out.x);
    out.residual_history.push_back(norm2(r) / bnorm);
    std::size_t growth_streak = 0;
    for (std::size_t s = 0; s < steps; ++s) {
        const std::vector<T> d = solver(r);
        for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += d[i];
        r = residual(out.x);
        const double rel = norm2(r) / bnorm;
        growth_streak = (rel > out.residual_history.back()) ? growth_streak + 1 : 0;
        out.residual_history.push_back(rel);
        if (growth_streak >= 2) {
            out.diverged = true;
            break;
        }
    }
    return out;
}

template <ScalarField T>
SolveOutcome<T> iterative_refine(const Matrix<T>& a, const LuFactors<T>& factors,
                                 const std::vector<T>& b, std::vector<T> x0, std::size_t steps) {
    return iterative_refine<T>(
        a, [&](const std::vector<T>& r) { return lu_solve(factors, r); }, b, std::move(x0), steps);
}

// Unpivoted elimination on F A H per the preprocessing identities: solve
// F A H y = F b, recover x = H y, then polish with refinement steps that reuse
// the factorization of the product. Zero pivots propagate to the caller, who
// may retry with a fresh seed.
template <ScalarField T>
SolveOutcome<T> preprocess_solve(const Matrix<T>& a, const std::vector<T>& b,
                                 const MultiplierSpec& pre_spec, const MultiplierSpec& post_spec,
                                 std::size_t refine_steps) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("preprocess_solve: square input required");
    if (b.size() != n) throw DimensionError("preprocess_solve: length mismatch");

    const auto pre = SideMultiplier<T>::make(pre_spec, n);
    const auto post = SideMultiplier<T>::make(post_spec, n);

    const Matrix<T> product = pre.left_multiply(post.right_multiply(a));
    const LuFactors<T> factors = genp_factor(product);

    auto chain_solver = [&](const std::vector<T>& rhs) {
        return post.apply_vec(lu_solve(factors, pre.apply_vec(rhs)));
    };

    std::vector<T> x0(n, T{});
    SolveOutcome<T> out = iterative_refine<T>(a, chain_solver, b, std::move(x0), refine_steps + 1);
    // the first correction from x0 = 0 is the direct solve itself; drop the
    // trivial leading entry so the history starts at the solve residual
    out.residual_history.erase(out.residual_history.begin());
    return out;
}

// convenience wrapper: on a zero pivot, retry with freshly derived seeds
template <ScalarField T>
SolveOutcome<T> preprocess_solve_with_retry(const Matrix<T>& a, const std::vector<T>& b,
                                            MultiplierSpec pre_spec, MultiplierSpec post_spec,
                                            std::size_t refine_steps, std::size_t max_retries = 3) {
    for (std::size_t attempt = 0;; ++attempt) {
        try {
            return preprocess_solve(a, b, pre_spec, post_spec, refine_steps);
        } catch (const ZeroPivotError&) {
            if (attempt >= max_retries) throw;
            pre_spec.seed = derive_seed(pre_spec.seed, 0x52455452ull, attempt + 1);
            post_spec.seed = derive_seed(post_spec.seed, 0x52455452ull, attempt + 1);
        }
    }
}

}  // namespace randla
