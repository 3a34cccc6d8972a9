#pragma once

#include <vector>

#include "randla/fft.hpp"
#include "randla/matrix.hpp"
#include "randla/multipliers.hpp"
#include "randla/norms.hpp"
#include "randla/qr.hpp"
#include "randla/svd.hpp"

namespace randla::testbed {

// Adversarial input for unpivoted elimination: the leading n/2 block carries
// exactly four zero singular values (the rest sit at 1), bordered by Gaussian
// Toeplitz blocks rescaled to unit spectral norm. Pivoted elimination sails
// through; the unpivoted kind hits the singular leading block.
inline RealMatrix gen_hard_block(std::size_t n, std::uint64_t seed) {
    if (n < 8 || n % 2 != 0) throw DimensionError("gen_hard_block: need even n >= 8");
    const std::size_t k = n / 2;
    const RealMatrix u = orthonormal_basis(gen_gaussian(k, k, derive_seed(seed, 1)));
    const RealMatrix v = orthonormal_basis(gen_gaussian(k, k, derive_seed(seed, 2)));
    RealMatrix scaled = u;
    for (std::size_t j = k - 4; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) scaled(i, j) = 0.0;
    const RealMatrix a_k = matmul(scaled, v.transpose());

    auto toeplitz = [&](std::uint64_t s) {
        RngStream rng(s);
        std::vector<double> diag_values(2 * k - 1);  // index (i - j) + (k - 1)
        for (double& t : diag_values) t = rng.next_gaussian();
        RealMatrix t(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) t(i, j) = diag_values[i + (k - 1) - j];
        const double norm = spectral_norm_estimate(t);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) t(i, j) /= norm;
        return t;
    };

    RealMatrix out(n, n);
    out.set_block(0, 0, a_k);
    out.set_block(0, k, toeplitz(derive_seed(seed, 3)));
    out.set_block(k, 0, toeplitz(derive_seed(seed, 4)));
    out.set_block(k, k, toeplitz(derive_seed(seed, 5)));
    return out;
}

// The transform matrix itself: unitary up to scaling, yet its leading 2-by-2
// block collapses to numerical rank one as n grows, which defeats unpivoted
// elimination outright.
inline ComplexMatrix gen_dft_input(std::size_t n) {
    if (!is_power_of_two(n) || n < 64) throw DimensionError("gen_dft_input: need a power of two >= 64");
    return dft_dense(n);
}

// Ill-conditioned input of known numerical rank r: sigma_j = 1/j up to r,
// 1e-10 beyond, between random orthogonal factors. The construction's own
// truncated factors ship with the matrix, so experiments never recompute
// an SVD to learn the truth.
struct LowRankInstance {
    RealMatrix a;
    TruncatedSVD<double> truth;
    std::vector<double> singulars;
};

inline LowRankInstance gen_lownumrank(std::size_t n, std::size_t r, std::uint64_t seed) {
    if (r < 1 || r >= n) throw DimensionError("gen_lownumrank: need 1 <= r < n");
    const RealMatrix s = orthonormal_basis(gen_gaussian(n, n, derive_seed(seed, 1)));
    const RealMatrix t = orthonormal_basis(gen_gaussian(n, n, derive_seed(seed, 2)));
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j)
        sigma[j] = (j < r) ? 1.0 / static_cast<double>(j + 1) : 1e-10;
    RealMatrix scaled = s;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= sigma[j];
    LowRankInstance out{matmul(scaled, t.transpose()),
                        TruncatedSVD<double>{s.leading_block(n, r),
                                             std::vector<double>(sigma.begin(), sigma.begin() + r),
                                             t.leading_block(n, r)},
                        std::move(sigma)};
    return out;
}

inline std::vector<double> gen_gaussian_vector(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> b(n);
    for (double& v : b) v = rng.next_gaussian();
    return b;
}

// Gaussian draw conditioned on every leading block staying comfortably
// invertible, the regime where unpivoted elimination is numerically
// meaningful. Rejection keeps the draw seed-deterministic.
inline RealMatrix gen_strongly_nonsingular(std::size_t n, std::uint64_t seed, double cond_cap = 100.0) {
    for (std::uint64_t attempt = 0; attempt < 500; ++attempt) {
        const RealMatrix a = gen_gaussian(n, n, derive_seed(seed, 0xA11, attempt));
        bool ok = true;
        for (std::size_t j = 1; j <= n && ok; ++j) {
            const auto sv = svd_values(a.leading_block(j, j));
            ok = sv.back() > 0.0 && sv.front() / sv.back() <= cond_cap;
        }
        if (ok) return a;
    }
    throw ConvergenceError("no strongly nonsingular draw accepted", 500);
}

}  // namespace randla::testbed
