#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "randla/lu.hpp"
#include "randla/matrix.hpp"
#include "randla/svd.hpp"

namespace randla {

// Recursive block elimination. An internal node eliminates the first k rows
// and columns: it stores the strips D B^{-1} and B^{-1} C, a leaf child for
// the pivot block B and a child for the Schur complement S = E - D B^{-1} C.
// The leaves hold their blocks and a pivoted factorization as the black-box
// inversion step.
template <ScalarField T>
struct BlockNode {
    std::size_t dim = 0;
    std::size_t offset = 0;      // global position of the block's first row/column
    std::size_t pivot_size = 0;  // k; 0 marks a leaf

    // leaf payload
    Matrix<T> block_matrix;
    std::optional<LuFactors<T>> block_lu;

    // internal payload
    Matrix<T> db_inv;   // (dim-k) x k
    Matrix<T> b_inv_c;  // k x (dim-k)
    std::unique_ptr<BlockNode> pivot_child;
    std::unique_ptr<BlockNode> schur_child;

    bool leaf() const { return pivot_size == 0; }
};

template <ScalarField T>
struct BlockFactorization {
    std::unique_ptr<BlockNode<T>> root;
    std::vector<std::size_t> split;

    // elimination pivots in order; the diagonal of the assembled block
    // diagonal factor, flattened
    std::vector<T> pivots() const {
        std::vector<T> out;
        collect_pivots(*root, out);
        return out;
    }

    Matrix<T> reassemble() const { return reassemble_node(*root); }

  private:
    static void collect_pivots(const BlockNode<T>& node, std::vector<T>& out) {
        if (node.leaf()) {
            for (std::size_t j = 0; j < node.dim; ++j) out.push_back(node.block_lu->upper(j, j));
            return;
        }
        collect_pivots(*node.pivot_child, out);
        collect_pivots(*node.schur_child, out);
    }

    static Matrix<T> reassemble_node(const BlockNode<T>& node) {
        if (node.leaf()) {
            // undo the leaf's internal pivoting: A(perm[i], :) = (L U)(i, :)
            const Matrix<T> lu = matmul(node.block_lu->lower, node.block_lu->upper);
            if (!node.block_lu->perm) return lu;
            Matrix<T> out(node.dim, node.dim);
            for (std::size_t i = 0; i < node.dim; ++i)
                for (std::size_t j = 0; j < node.dim; ++j) out((*node.block_lu->perm)[i], j) = lu(i, j);
            return out;
        }
        const Matrix<T> b = reassemble_node(*node.pivot_child);
        const Matrix<T> s = reassemble_node(*node.schur_child);
        const std::size_t k = node.pivot_size;
        const Matrix<T> c = matmul(b, node.b_inv_c);
        const Matrix<T> d = matmul(node.db_inv, b);
        Matrix<T> out(node.dim, node.dim);
        out.set_block(0, 0, b);
        out.set_block(0, k, c);
        out.set_block(k, 0, d);
        out.set_block(k, k, s + matmul(node.db_inv, c));
        return out;
    }
};

namespace detail {

template <ScalarField T>
std::unique_ptr<BlockNode<T>> block_factor_node(const Matrix<T>& a,
                                                const std::vector<std::size_t>& split,
                                                std::size_t split_pos, std::size_t offset,
                                                double singular_tol) {
    auto node = std::make_unique<BlockNode<T>>();
    node->dim = a.rows();
    node->offset = offset;

    if (split_pos + 1 >= split.size()) {
        // leaf pivot block
        if (svd_values(a).back() <= singular_tol) throw SingularPivotBlockError(offset + 1);
        node->block_matrix = a;
        node->block_lu = gepp_factor(a);
        return node;
    }

    const std::size_t k = split[split_pos];
    const std::size_t rest = node->dim - k;
    node->pivot_size = k;

    const Matrix<T> b = a.leading_block(k, k);
    std::vector<std::size_t> leaf_split{k};
    node->pivot_child = block_factor_node(b, leaf_split, 0, offset, singular_tol);
    const LuFactors<T>& b_lu = *node->pivot_child->block_lu;

    const Matrix<T> c = a.block(0, k, k, rest);
    const Matrix<T> d = a.block(k, 0, rest, k);

    node->b_inv_c = Matrix<T>(k, rest);
    for (std::size_t j = 0; j < rest; ++j) {
        const std::vector<T> col = lu_solve(b_lu, c.col(j));
        for (std::size_t i = 0; i < k; ++i) node->b_inv_c(i, j) = col[i];
    }
    node->db_inv = Matrix<T>(rest, k);
    for (std::size_t i = 0; i < rest; ++i) {
        const std::vector<T> row = lu_solve_transpose(b_lu, d.row(i));
        for (std::size_t j = 0; j < k; ++j) node->db_inv(i, j) = row[j];
    }

    // S = E - (D B^{-1}) C, accumulated in natural order so that the
    // single-column case reproduces plain elimination arithmetic exactly
    Matrix<T> s(rest, rest);
    for (std::size_t i = 0; i < rest; ++i)
        for (std::size_t j = 0; j < rest; ++j) {
            T acc = a(k + i, k + j);
            for (std::size_t t = 0; t < k; ++t) acc = acc - node->db_inv(i, t) * c(t, j);
            s(i, j) = acc;
        }

    node->schur_child = block_factor_node(s, split, split_pos + 1, offset + k, singular_tol);
    return node;
}

template <ScalarField T>
std::vector<T> block_solve_node(const BlockNode<T>& node, const std::vector<T>& v) {
    if (node.leaf()) return lu_solve(*node.block_lu, v);
    const std::size_t k = node.pivot_size, rest = node.dim - k;
    std::vector<T> v1(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<T> u2(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    for (std::size_t i = 0; i < rest; ++i) {
        T acc = u2[i];
        for (std::size_t t = 0; t < k; ++t) acc -= node.db_inv(i, t) * v1[t];
        u2[i] = acc;
    }
    const std::vector<T> w1 = block_solve_node(*node.pivot_child, v1);
    const std::vector<T> w2 = block_solve_node(*node.schur_child, u2);
    std::vector<T> x(node.dim);
    for (std::size_t i = 0; i < k; ++i) {
        T acc = w1[i];
        for (std::size_t t = 0; t < rest; ++t) acc -= node.b_inv_c(i, t) * w2[t];
        x[i] = acc;
    }
    for (std::size_t i = 0; i < rest; ++i) x[k + i] = w2[i];
    return x;
}

}  // namespace detail

// split lists the pivot block sizes in elimination order and must sum to n
template <ScalarField T>
BlockFactorization<T> block_ge_factor(const Matrix<T>& a, const std::vector<std::size_t>& split) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("block_ge_factor: square input required");
    if (split.empty() || std::accumulate(split.begin(), split.end(), std::size_t{0}) != n)
        throw DimensionError("block_ge_factor: split must sum to the dimension");
    for (std::size_t k : split)
        if (k == 0) throw DimensionError("block_ge_factor: zero block size");
    const double tol = tol_pivot(n) * spectral_norm_estimate(a);
    BlockFactorization<T> out;
    out.split = split;
    out.root = detail::block_factor_node(a, split, 0, 0, tol);
    return out;
}

// balanced power-of-two recursion: halve until scalar blocks
inline std::vector<std::size_t> balanced_split(std::size_t n) {
    std::vector<std::size_t> out;
    std::size_t remaining = n;
    while (remaining > 1) {
        std::size_t half = remaining / 2;
        out.push_back(half);
        remaining -= half;
    }
    out.push_back(remaining);
    return out;
}

template <ScalarField T>
std::vector<T> block_solve(const BlockFactorization<T>& f, const std::vector<T>& b) {
    if (b.size() != f.root->dim) throw DimensionError("block_solve: length mismatch");
    return detail::block_solve_node(*f.root, b);
}

// E - D B^{-1} C for the leading k-by-k pivot block B; equals the trailing
// block of the inverse, inverted
template <ScalarField T>
Matrix<T> schur_complement(const Matrix<T>& a, std::size_t k) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("schur_complement: square input required");
    if (k == 0 || k >= n) throw DimensionError("schur_complement: need 0 < k < n");
    const Matrix<T> b = a.leading_block(k, k);
    LuFactors<T> b_lu = gepp_factor(b);  // throws on a singular leading block
    const Matrix<T> c = a.block(0, k, k, n - k);
    const Matrix<T> d = a.block(k, 0, n - k, k);
    Matrix<T> x(k, n - k);
    for (std::size_t j = 0; j < n - k; ++j) {
        const std::vector<T> col = lu_solve(b_lu, c.col(j));
        for (std::size_t i = 0; i < k; ++i) x(i, j) = col[i];
    }
    return a.block(k, k, n - k, n - k) - matmul(d, x);
}

}  // namespace randla
