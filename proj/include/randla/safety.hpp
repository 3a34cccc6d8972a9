#pragma once

#include <vector>

#include "randla/matrix.hpp"
#include "randla/svd.hpp"

namespace randla {

// Pivot-safety envelope of a square matrix: with N = ||A|| and N_minus the
// largest inverse norm over the leading blocks, every pivot magnitude of
// unpivoted elimination stays within [1/N_minus, N_plus] for
// N_plus = N + N_minus N^2. The per-block condition numbers show where an
// elimination would meet trouble.
struct SafetyReport {
    double n_norm = 0.0;
    double n_minus = 0.0;
    double n_plus = 0.0;
    std::vector<double> leading_conds;  // kappa(A^(j)), j = 1..n
};

template <ScalarField T>
SafetyReport safety_report(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("safety_report: square input required");
    SafetyReport rep;
    rep.leading_conds.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const auto sv = svd_values(a.leading_block(j, j));
        if (sv.back() == 0.0) throw SingularPivotBlockError(j);
        rep.leading_conds.push_back(sv.front() / sv.back());
        rep.n_minus = std::max(rep.n_minus, 1.0 / sv.back());
        if (j == n) rep.n_norm = sv.front();
    }
    rep.n_plus = rep.n_norm + rep.n_minus * rep.n_norm * rep.n_norm;
    return rep;
}

}  // namespace randla
