#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "randla/matrix.hpp"
#include "randla/matrix_io.hpp"
#include "randla/multipliers.hpp"
#include "randla/norms.hpp"
#include "randla/qr.hpp"
#include "randla/svd.hpp"

using namespace randla;

namespace {

// independent product oracle
template <ScalarField T>
Matrix<T> matmul_triple_loop(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc{};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

RealMatrix diag(std::vector<double> d) {
    RealMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

TEST_CASE("matmul identity and permutation cases") {
    const RealMatrix a = gen_gaussian(3, 3, 11);
    CHECK(matmul(RealMatrix::identity(3), a) == a);

    const RealMatrix m(2, 2, {1, 2, 3, 4});
    const RealMatrix p(2, 2, {0, 1, 1, 0});
    const RealMatrix prod = matmul(m, p);
    CHECK(prod(0, 0) == 2);
    CHECK(prod(0, 1) == 1);
    CHECK(prod(1, 0) == 4);
    CHECK(prod(1, 1) == 3);
}

TEST_CASE("matmul matches the entrywise oracle") {
    const RealMatrix a = gen_gaussian(5, 5, 21);
    const RealMatrix b = gen_gaussian(5, 5, 22);
    const RealMatrix fast = matmul(a, b);
    const RealMatrix slow = matmul_triple_loop(a, b);
    CHECK(frobenius_norm(fast - slow) <= 1e-13 * frobenius_norm(slow));
}

TEST_CASE("matmul rejects dimension mismatch") {
    CHECK_THROWS_AS(matmul(gen_gaussian(2, 3, 1), gen_gaussian(2, 2, 1)), DimensionError);
}

TEST_CASE("matrix construction validates entry count and leading blocks") {
    CHECK_THROWS_AS(RealMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
    const RealMatrix a = gen_gaussian(4, 5, 3);
    const RealMatrix blk = a.leading_block(2, 3);
    CHECK(blk(1, 2) == a(1, 2));
    CHECK(a.leading_block(4, 5) == a);
    CHECK_THROWS_AS(a.leading_block(5, 5), DimensionError);
}

TEST_CASE("qr of an orthonormal matrix returns it unchanged") {
    const RealMatrix u = orthonormal_basis(gen_gaussian(6, 4, 31));
    const QrResult<double> f = qr(u);
    CHECK(frobenius_norm(f.q - u) <= 1e-12);
    CHECK(frobenius_norm(f.r - RealMatrix::identity(4)) <= 1e-12);
}

TEST_CASE("qr recovers the hand-worked single column") {
    const RealMatrix a(2, 1, {3, 4});
    const QrResult<double> f = qr(a);
    CHECK(f.q(0, 0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(f.q(1, 0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(f.r(0, 0) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("qr flags dependent columns") {
    RealMatrix a(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        a(i, 0) = static_cast<double>(i + 1);
        a(i, 1) = 2.0 * static_cast<double>(i + 1);
    }
    CHECK_THROWS_AS(qr(a), RankDeficiencyError);
}

TEST_CASE("qr invariants: reconstruction, positive diagonal, determinism") {
    const RealMatrix a = gen_gaussian(7, 4, 41);
    const QrResult<double> f1 = qr(a);
    const QrResult<double> f2 = qr(a);
    CHECK(f1.q == f2.q);  // deterministic algorithm, bitwise equal factors
    CHECK(f1.r == f2.r);
    CHECK(frobenius_norm(matmul(f1.q, f1.r) - a) <= tol_recon(7, 4) * spectral_norm(a));
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(f1.r(j, j) > 0.0);
        for (std::size_t i = j + 1; i < 4; ++i) CHECK(f1.r(i, j) == 0.0);
    }
}

TEST_CASE("complex qr keeps the diagonal real positive") {
    ComplexMatrix a(3, 2);
    RngStream rng(5);
    for (auto i = 0u; i < 3; ++i)
        for (auto j = 0u; j < 2; ++j) a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    const auto f = qr(a);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(f.r(j, j).imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(f.r(j, j).real() > 0.0);
    }
    CHECK(frobenius_norm(matmul(f.q.adjoint(), f.q) - ComplexMatrix::identity(2)) <= 1e-12);
    CHECK(frobenius_norm(matmul(f.q, f.r) - a) <= 1e-12 * frobenius_norm(a));
}

TEST_CASE("svd of simple matrices") {
    const auto s1 = svd(diag({3, 1}));
    CHECK(s1.singulars[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s1.singulars[1] == doctest::Approx(1.0).epsilon(1e-14));

    // eigenvalues of A^T A for [[0,2],[1,0]] are 4 and 1
    const RealMatrix a(2, 2, {0, 2, 1, 0});
    const auto s2 = svd(a);
    CHECK(s2.singulars[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s2.singulars[1] == doctest::Approx(1.0).epsilon(1e-13));

    RealMatrix z(3, 3);
    const auto s3 = svd(z);
    for (double v : s3.singulars) CHECK(v == 0.0);
    CHECK(frobenius_norm(matmul(s3.left.transpose(), s3.left) - RealMatrix::identity(3)) <=
          tol_orth(3, 3));
}

TEST_CASE("svd invariants on a random complex matrix") {
    ComplexMatrix a(6, 4);
    RngStream rng(17);
    for (auto i = 0u; i < 6; ++i)
        for (auto j = 0u; j < 4; ++j) a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    const auto s = svd(a);
    CHECK(std::is_sorted(s.singulars.rbegin(), s.singulars.rend()));
    CHECK(frobenius_norm(matmul(s.left.adjoint(), s.left) - ComplexMatrix::identity(4)) <= tol_orth(6, 4));
    CHECK(frobenius_norm(matmul(s.right.adjoint(), s.right) - ComplexMatrix::identity(4)) <= tol_orth(6, 4));
    CHECK(frobenius_norm(s.reconstruct() - a) <= tol_recon(6, 4) * s.singulars.front());
}

TEST_CASE("norm family on identity and diagonal inputs") {
    const RealMatrix id = RealMatrix::identity(5);
    CHECK(spectral_norm(id) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pseudo_inverse_norm(id) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(condition_number(id) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(frobenius_norm(id) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

    const RealMatrix d = diag({4, 2});
    CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(pseudo_inverse_norm(d) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(condition_number(d) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(frobenius_norm(d) == doctest::Approx(std::sqrt(20.0)).epsilon(1e-14));
}

TEST_CASE("condition number agrees with the svd route") {
    const RealMatrix a = gen_gaussian(6, 6, 51);
    const auto sv = svd(a).singulars;
    CHECK(condition_number(a) == doctest::Approx(sv.front() / sv.back()).epsilon(1e-12));
}

TEST_CASE("norms reject exactly singular inputs") {
    RealMatrix z(2, 2);
    CHECK_THROWS_AS(pseudo_inverse_norm(z), SingularMatrixError);
    CHECK_THROWS_AS(condition_number(z), SingularMatrixError);
}

TEST_CASE("truncation: full rank keeps the matrix, diagonal drops the tail") {
    const RealMatrix d = diag({3, 2, 1});
    const auto s = svd(d);
    const auto full = truncate_svd(s, 3);
    CHECK(frobenius_norm(full.reconstruct() - d) <= 1e-13);

    const auto two = truncate_svd(s, 2);
    CHECK(spectral_norm(d - two.reconstruct()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(truncate_svd(s, 0), DimensionError);
    CHECK_THROWS_AS(truncate_svd(s, 4), DimensionError);
}

TEST_CASE("truncation error equals the next singular value") {
    const RealMatrix a = gen_gaussian(8, 8, 61);
    const auto s = svd(a);
    const auto t = truncate_svd(s, 3);
    CHECK(spectral_norm(a - t.reconstruct()) == doctest::Approx(s.singulars[3]).epsilon(1e-12));
}

TEST_CASE("singular values are invariant under orthogonal factors") {
    RngStream seeds(71);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t s0 = seeds.next_u64();
        const RealMatrix a = gen_gaussian(6, 6, s0);
        const RealMatrix s = orthonormal_basis(gen_gaussian(6, 6, s0 + 1));
        const RealMatrix t = orthonormal_basis(gen_gaussian(6, 6, s0 + 2));
        const auto base = svd_values(a);
        const auto left = svd_values(matmul(s, a));
        const auto right = svd_values(matmul(a, t));
        for (std::size_t j = 0; j < base.size(); ++j) {
            CHECK(left[j] == doctest::Approx(base[j]).epsilon(1e-11));
            CHECK(right[j] == doctest::Approx(base[j]).epsilon(1e-11));
        }
    }
}

TEST_CASE("leading blocks never beat the full matrix singular values") {
    RngStream seeds(81);
    for (int trial = 0; trial < 100; ++trial) {
        const RealMatrix a = gen_gaussian(7, 7, seeds.next_u64());
        const auto base = svd_values(a);
        const auto sub = svd_values(a.leading_block(4, 5));
        for (std::size_t j = 0; j < sub.size(); ++j) CHECK(base[j] >= sub[j] - 1e-12);
    }
}

TEST_CASE("pseudo-inverse norms grow with added columns") {
    RngStream seeds(91);
    for (int trial = 0; trial < 100; ++trial) {
        const RealMatrix a = gen_gaussian(9, 6, seeds.next_u64());
        const double narrow = pseudo_inverse_norm(a.leading_block(9, 4));
        const double wide = pseudo_inverse_norm(a);
        CHECK(narrow <= wide * (1.0 + 1e-12));
    }
}

TEST_CASE("matrix text format round-trips both fields") {
    const RealMatrix a = gen_gaussian(3, 4, 101);
    std::stringstream buf;
    write_matrix(buf, a);
    const auto back = std::get<RealMatrix>(read_matrix(buf));
    CHECK(back == a);

    ComplexMatrix z(2, 2);
    z(0, 0) = Complex(1.5, -2.25);
    z(0, 1) = Complex(-1, 0);
    z(1, 0) = Complex(0, 1);
    z(1, 1) = Complex(3.25e-3, 1e10);
    std::stringstream zbuf;
    write_matrix(zbuf, z);
    const auto zback = std::get<ComplexMatrix>(read_matrix(zbuf));
    CHECK(zback == z);
}

TEST_CASE("fixture files load") {
    const auto real = std::get<RealMatrix>(read_matrix_file("fixtures/real3x3.txt"));
    CHECK(real(2, 2) == 10.0);
    const auto cplx = std::get<ComplexMatrix>(read_matrix_file("fixtures/complex2x2.txt"));
    CHECK(cplx(0, 1) == Complex(0, 1));
    CHECK(cplx(1, 0) == Complex(0, -1));
    CHECK(cplx(1, 1) == Complex(2, 0.5));
}

TEST_CASE("malformed fixtures are rejected") {
    std::stringstream bad("2 2 quaternion\n1 2 3 4\n");
    CHECK_THROWS_AS(read_matrix(bad), IoError);
    std::stringstream truncated("2 2 real\n1 2 3\n");
    CHECK_THROWS_AS(read_matrix(truncated), IoError);
}
