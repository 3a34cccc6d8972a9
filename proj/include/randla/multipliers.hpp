#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "randla/circulant.hpp"
#include "randla/fft.hpp"
#include "randla/matrix.hpp"
#include "randla/rng.hpp"

namespace randla {

// Seeded generators for the random multiplier families. Every generator is a
// pure function of its arguments: the same seed gives bit-identical output,
// and trial streams are derived by the caller before the generator runs.

enum class MultiplierKind {
    None,
    Gaussian,
    RealCirculant,
    UnitaryCirculant,
    ToeplitzBlock,
    Srft,
    FiniteSetUniform,
    CircSkewProduct,
};

enum class ToeplitzVariant { Real, Unitary };

struct MultiplierSpec {
    MultiplierKind kind = MultiplierKind::None;
    std::size_t rows = 0;
    std::size_t cols = 0;  // cols <= rows for sketching uses
    std::uint64_t seed = 0;
    std::size_t set_cardinality = 65536;              // FiniteSetUniform only
    ToeplitzVariant variant = ToeplitzVariant::Real;  // ToeplitzBlock only
};

inline bool multiplier_is_complex(const MultiplierSpec& spec) {
    switch (spec.kind) {
        case MultiplierKind::UnitaryCirculant:
        case MultiplierKind::Srft:
            return true;
        case MultiplierKind::ToeplitzBlock:
            return spec.variant == ToeplitzVariant::Unitary;
        default:
            return false;
    }
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0) {
    return RngStream(seed).derived(k1, k2).next_u64();
}

// m-by-n i.i.d. N(0, 1)
inline RealMatrix gen_gaussian(std::size_t m, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    RealMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = rng.next_gaussian();
    return out;
}

// first column i.i.d. uniform on [-1, 1]
inline RealCirculant gen_real_circulant(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> c(n);
    for (double& v : c) v = rng.next_symmetric();
    return RealCirculant(std::move(c));
}

// spectrum u_j = exp(2*pi*i*phi_j) with phi_j uniform on [0, 1); the first
// column is Omega^{-1} u, and the dense expansion is unitary
inline ComplexCirculant gen_unitary_circulant(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<Complex> u(n);
    for (Complex& v : u) v = std::polar(1.0, 2.0 * std::numbers::pi * rng.next_double());
    return ComplexCirculant(inverse_fft(std::move(u)));
}

inline ToeplitzBlock<double> gen_real_toeplitz_block(std::size_t n, std::size_t l, std::uint64_t seed) {
    return ToeplitzBlock<double>(gen_real_circulant(n, seed), n, l);
}

inline ToeplitzBlock<Complex> gen_unitary_toeplitz_block(std::size_t n, std::size_t l, std::uint64_t seed) {
    return ToeplitzBlock<Complex>(gen_unitary_circulant(n, seed), n, l);
}

// sqrt(n/l) D Omega R built explicitly from its parts; phases give the unit
// circle diagonal D, columns name the l sampled columns of Omega
inline ComplexMatrix srft_from_parts(std::size_t n, const std::vector<double>& phases,
                                     const std::vector<std::size_t>& columns) {
    const std::size_t l = columns.size();
    if (phases.size() != n || l == 0 || l > n) throw DimensionError("srft_from_parts: bad shapes");
    std::vector<Complex> root(n);
    for (std::size_t k = 0; k < n; ++k)
        root[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(l));
    ComplexMatrix out(n, l);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex d = scale * std::polar(1.0, 2.0 * std::numbers::pi * phases[i]);
        for (std::size_t j = 0; j < l; ++j) out(i, j) = d * root[(i * columns[j]) % n];
    }
    return out;
}

// uniform choice of l column indices out of n without replacement, sorted
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t l, RngStream& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(l));
    std::sort(out.begin(), out.end());
    return out;
}

inline ComplexMatrix gen_srft(std::size_t n, std::size_t l, std::uint64_t seed) {
    if (l < 1 || l > n) throw DimensionError("gen_srft: need 1 <= l <= n");
    RngStream rng(seed);
    std::vector<double> phases(n);
    for (double& p : phases) p = rng.next_double();
    const auto cols = sample_without_replacement(n, l, rng);
    return srft_from_parts(n, phases, cols);
}

// the column indices an SRFT with this seed samples; used by the
// circulant-times-permutation sketch variant
inline std::vector<std::size_t> srft_columns(std::size_t n, std::size_t l, std::uint64_t seed) {
    RngStream rng(seed);
    for (std::size_t i = 0; i < n; ++i) rng.next_double();  // skip the phase draws
    return sample_without_replacement(n, l, rng);
}

// entries uniform over the centered integer set {-floor(card/2), ...,
// ceil(card/2) - 1}
inline RealMatrix gen_finite_set_uniform(std::size_t m, std::size_t n, std::uint64_t seed,
                                         std::size_t cardinality) {
    if (cardinality < 2) throw DimensionError("gen_finite_set_uniform: cardinality must be >= 2");
    RngStream rng(seed);
    const auto offset = static_cast<std::int64_t>(cardinality / 2);
    RealMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = static_cast<double>(static_cast<std::int64_t>(rng.next_below(cardinality)) - offset);
    return out;
}

// skew-circulant companion of the real circulant recipe: same first column
// draw, wrapped entries carry a flipped sign
inline RealMatrix skew_circulant_dense(const std::vector<double>& c) {
    const std::size_t n = c.size();
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = (i >= j) ? c[i - j] : -c[n + i - j];
    return out;
}

// experimental: product of a real circulant and a skew-circulant drawn from
// derived streams of the same seed
inline RealMatrix gen_circ_skew_product(std::size_t n, std::uint64_t seed) {
    const auto circ = gen_real_circulant(n, derive_seed(seed, 1));
    RngStream rng(derive_seed(seed, 2));
    std::vector<double> c(n);
    for (double& v : c) v = rng.next_symmetric();
    return matmul(circ.dense(), skew_circulant_dense(c));
}

// dense sample of the family named by the spec, in the requested field
template <ScalarField T>
Matrix<T> materialize(const MultiplierSpec& spec) {
    if constexpr (!field<T>::is_complex) {
        if (multiplier_is_complex(spec))
            throw DimensionError("complex multiplier family requested in a real pipeline");
    }
    auto lift = [](const RealMatrix& m) {
        if constexpr (field<T>::is_complex)
            return to_complex(m);
        else
            return m;
    };
    switch (spec.kind) {
        case MultiplierKind::None:
            if (spec.rows != spec.cols) throw DimensionError("identity multiplier must be square");
            return Matrix<T>::identity(spec.rows);
        case MultiplierKind::Gaussian:
            return lift(gen_gaussian(spec.rows, spec.cols, spec.seed));
        case MultiplierKind::RealCirculant:
            if (spec.rows != spec.cols) throw DimensionError("circulant multiplier must be square");
            return lift(gen_real_circulant(spec.rows, spec.seed).dense());
        case MultiplierKind::FiniteSetUniform:
            return lift(gen_finite_set_uniform(spec.rows, spec.cols, spec.seed, spec.set_cardinality));
        case MultiplierKind::CircSkewProduct:
            if (spec.rows != spec.cols) throw DimensionError("circulant product multiplier must be square");
            return lift(gen_circ_skew_product(spec.rows, spec.seed));
        case MultiplierKind::ToeplitzBlock:
            if (spec.variant == ToeplitzVariant::Real)
                return lift(gen_real_toeplitz_block(spec.rows, spec.cols, spec.seed).dense());
            else if constexpr (field<T>::is_complex)
                return gen_unitary_toeplitz_block(spec.rows, spec.cols, spec.seed).dense();
            break;
        case MultiplierKind::UnitaryCirculant:
            if constexpr (field<T>::is_complex) {
                if (spec.rows != spec.cols) throw DimensionError("circulant multiplier must be square");
                return gen_unitary_circulant(spec.rows, spec.seed).dense();
            }
            break;
        case MultiplierKind::Srft:
            if constexpr (field<T>::is_complex) return gen_srft(spec.rows, spec.cols, spec.seed);
            break;
    }
    throw DimensionError("unsupported multiplier materialization");
}

// ---- CLI token forms ----

inline std::string format_multiplier_token(const MultiplierSpec& spec) {
    switch (spec.kind) {
        case MultiplierKind::None: return "none";
        case MultiplierKind::Gaussian: return "gaussian";
        case MultiplierKind::RealCirculant: return "circulant";
        case MultiplierKind::UnitaryCirculant: return "unitary-circulant";
        case MultiplierKind::ToeplitzBlock:
            return spec.variant == ToeplitzVariant::Real ? "toeplitz:variant=real" : "toeplitz:variant=unitary";
        case MultiplierKind::Srft: return "srft";
        case MultiplierKind::FiniteSetUniform:
            return "finite:card=" + std::to_string(spec.set_cardinality);
        case MultiplierKind::CircSkewProduct: return "circskew";
    }
    return "none";
}

inline MultiplierSpec parse_multiplier_token(const std::string& token) {
    MultiplierSpec spec;
    const std::size_t colon = token.find(':');
    const std::string head = token.substr(0, colon);
    const std::string opts = colon == std::string::npos ? "" : token.substr(colon + 1);
    if (head == "none") spec.kind = MultiplierKind::None;
    else if (head == "gaussian") spec.kind = MultiplierKind::Gaussian;
    else if (head == "circulant") spec.kind = MultiplierKind::RealCirculant;
    else if (head == "unitary-circulant") spec.kind = MultiplierKind::UnitaryCirculant;
    else if (head == "toeplitz") spec.kind = MultiplierKind::ToeplitzBlock;
    else if (head == "srft") spec.kind = MultiplierKind::Srft;
    else if (head == "finite") spec.kind = MultiplierKind::FiniteSetUniform;
    else if (head == "circskew") spec.kind = MultiplierKind::CircSkewProduct;
    else throw IoError("unknown multiplier token: " + token);

    std::size_t pos = 0;
    while (pos < opts.size()) {
        const std::size_t comma = opts.find(',', pos);
        const std::size_t end = comma == std::string::npos ? opts.size() : comma;
        const std::string kv = opts.substr(pos, end - pos);
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw IoError("bad multiplier option: " + kv);
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "variant" && spec.kind == MultiplierKind::ToeplitzBlock) {
            if (value == "real") spec.variant = ToeplitzVariant::Real;
            else if (value == "unitary") spec.variant = ToeplitzVariant::Unitary;
            else throw IoError("bad toeplitz variant: " + value);
        } else if (key == "card" && spec.kind == MultiplierKind::FiniteSetUniform) {
            spec.set_cardinality = std::stoull(value);
        } else {
            throw IoError("bad multiplier option: " + kv);
        }
        pos = end + 1;
    }
    return spec;
}

}  // namespace randla
