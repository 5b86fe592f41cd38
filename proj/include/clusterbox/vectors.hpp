/*
 * vectors.hpp
 * -----------
 * D-matrices (columns = denominator vectors) and M-matrices (columns =
 * highest-power vectors), computed two independent ways:
 *
 *   - directly from the Laurent expansions of a seed's cluster, and
 *   - by the final-seed mutation recursion
 *       X_{t'} = X_t J_k + max( X_t [(B_t)^{.k}]_+ , X_t [(-B_t)^{.k}]_+ ),
 *     started from -I for D and from I for M.
 *
 * Also the initial-seed row-replacement law: mutating the initial seed in
 * direction k replaces row k of D_t with row k of M_t and leaves the other
 * rows unchanged.
 */
#pragma once

#include "clusterbox/matrices.hpp"
#include "clusterbox/seeds.hpp"

namespace clusterbox {

using DMatrix = IntMatrix;
using MMatrix = IntMatrix;

// Column j = -(min exponents) of cluster entry j.
inline DMatrix d_matrix_direct(const Seed& s) {
    const int n = s.n();
    DMatrix d(n, n);
    for (int j = 0; j < n; ++j) {
        const ExponentVector lo = s.cluster[static_cast<size_t>(j)].min_exponents();
        for (int i = 0; i < n; ++i) d.at(i, j) = -static_cast<std::int64_t>(lo[static_cast<size_t>(i)]);
    }
    return d;
}

// Column j = max exponents of cluster entry j.
inline MMatrix m_matrix_direct(const Seed& s) {
    const int n = s.n();
    MMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        const ExponentVector hi = s.cluster[static_cast<size_t>(j)].max_exponents();
        for (int i = 0; i < n; ++i) m.at(i, j) = static_cast<std::int64_t>(hi[static_cast<size_t>(i)]);
    }
    return m;
}

namespace vectors_detail {

inline IntMatrix recursion_step(const IntMatrix& x, const ExchangeMatrix& b_t, int k) {
    const IntMatrix bk = col_mask(b_t.matrix(), k);
    return x * j_matrix(b_t.n(), k) + entrywise_max(x * positive_part(bk), x * positive_part(-bk));
}

inline IntMatrix fold_recursion(const ExchangeMatrix& B0, const TreePath& path, IntMatrix init) {
    IntMatrix x = std::move(init);
    ExchangeMatrix b = B0;
    for (int k : path.word()) {
        x = recursion_step(x, b, k);
        b = mutate(b, k);
    }
    return x;
}

}  // namespace vectors_detail

inline DMatrix d_matrix_recursive(const ExchangeMatrix& B0, const TreePath& path) {
    return vectors_detail::fold_recursion(B0, path, IntMatrix::neg_identity(B0.n()));
}

inline MMatrix m_matrix_recursive(const ExchangeMatrix& B0, const TreePath& path) {
    return vectors_detail::fold_recursion(B0, path, IntMatrix::identity(B0.n()));
}

// D-matrix of the seed at the same tree vertex, measured from the initial
// seed mutated in direction k:  D - D^{k.} + M^{k.}. The walk from the new
// initial vertex to the target is prepend-k-and-reduce of `path`; direct
// recomputation along that walk is the test oracle for this formula.
inline DMatrix d_after_initial_mutation(const ExchangeMatrix& B0, int k, const TreePath& path) {
    require_direction(B0, k);
    const DMatrix d = d_matrix_recursive(B0, path);
    const MMatrix m = m_matrix_recursive(B0, path);
    return d - row_mask(d, k) + row_mask(m, k);
}

}  // namespace clusterbox
