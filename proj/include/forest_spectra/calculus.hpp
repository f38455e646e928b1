#pragma once

#include "forest_spectra/forest.hpp"
#include "forest_spectra/polynomial.hpp"

#include <algorithm>
#include <vector>

namespace forest_spectra {

namespace detail {

template <class S>
S negate_if_odd(S v, int parity) {
    if (parity % 2 != 0) return -v;
    return v;
}

inline void check_vertex_index(int v, int n, const char* what) {
    if (v < 0 || v >= n)
        throw InvalidIndex(std::string(what) + " index " + std::to_string(v + 1) +
                           " outside 1.." + std::to_string(n));
}

}  // namespace detail

// det(lambda I - G) assembled from an augmented host: the coefficient of
// lambda^k is the productivity sum over spanning forests with k+1 trees whose
// roots include the boundary. One enumeration pass fills every bucket. The
// boundary vertex has no out-arcs, so it is a root of every forest and the
// query only pins it for clarity.
template <class S>
Polynomial<S> char_poly(const AugmentedDigraph<S>& aug, int threads = 0) {
    ForestQuery q;
    q.required_roots = {aug.dagger()};
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    std::vector<S> coeffs(static_cast<std::size_t>(aug.n) + 1, scalar_zero<S>());
    for (int k = 0; k <= aug.n; ++k) coeffs[k] = buckets[static_cast<std::size_t>(k) + 1];
    return Polynomial<S>(std::move(coeffs));
}

template <class S>
Polynomial<S> char_poly(const SquareMatrix<S>& g, int threads = 0) {
    return char_poly(build_augmented(g), threads);
}

// det G as the signless sum over boundary-rooted single-tree forests, times
// (-1)^N. Equals char_poly evaluated at 0 up to that sign.
template <class S>
S determinant(const SquareMatrix<S>& g, int threads = 0) {
    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = {aug.dagger()};
    q.extra_trees = 0;
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    return detail::negate_if_odd(buckets[1], g.size());
}

// Determinant of the diagonal minor of G with rows/columns `struck` removed
// (0-based). Striking nothing gives det G; striking everything gives the
// empty minor, 1.
template <class S>
S diagonal_minor_det(const SquareMatrix<S>& g, std::vector<int> struck, int threads = 0) {
    std::sort(struck.begin(), struck.end());
    struck.erase(std::unique(struck.begin(), struck.end()), struck.end());
    for (int v : struck) detail::check_vertex_index(v, g.size(), "minor row/column");

    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = struck;
    q.required_roots.push_back(aug.dagger());
    q.extra_trees = 0;
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    const int trees = static_cast<int>(struck.size()) + 1;
    return detail::negate_if_odd(buckets[static_cast<std::size_t>(trees)],
                                 g.size() - static_cast<int>(struck.size()));
}

// Algebraic adjunct (signed cofactor) of entry g_nm, 0-based. For n == m this
// is the diagonal minor determinant; off the diagonal it is the sum over
// forests rooted exactly at {boundary, n} that carry the way m ~> n, times
// (-1)^(N-1). The sign absorbs the checkerboard factor, so the Laplace
// expansion sum_m g_nm * cofactor(n,m) reproduces det G for every row n.
template <class S>
S cofactor(const SquareMatrix<S>& g, int n, int m, int threads = 0) {
    detail::check_vertex_index(n, g.size(), "cofactor row");
    detail::check_vertex_index(m, g.size(), "cofactor column");
    if (n == m) return diagonal_minor_det(g, {n}, threads);

    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = {n, aug.dagger()};
    q.extra_trees = 0;
    q.path = std::make_pair(m, n);
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    return detail::negate_if_odd(buckets[2], g.size() - 1);
}

// det(lambda I - G_nn): coefficient k sums forests with roots containing
// {boundary, n} and k+2 trees. Degree N-1.
template <class S>
Polynomial<S> denominator_poly(const SquareMatrix<S>& g, int n, int threads = 0) {
    detail::check_vertex_index(n, g.size(), "pivot");
    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = {n, aug.dagger()};
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()), scalar_zero<S>());
    for (int k = 0; k < g.size(); ++k) coeffs[k] = buckets[static_cast<std::size_t>(k) + 2];
    return Polynomial<S>(std::move(coeffs));
}

// Numerator of the eigenvector component ratio: same forest family as the
// denominator but restricted to forests carrying the way m ~> n. The top
// family (all vertices roots) cannot contain a way, so the degree is at most
// N-2; the stored length still covers k = 0..N-1 so the bound is testable.
template <class S>
Polynomial<S> numerator_poly(const SquareMatrix<S>& g, int n, int m, int threads = 0) {
    detail::check_vertex_index(n, g.size(), "pivot");
    detail::check_vertex_index(m, g.size(), "component");
    if (n == m) throw InvalidIndex("numerator indices must differ");
    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = {n, aug.dagger()};
    q.path = std::make_pair(m, n);
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()), scalar_zero<S>());
    for (int k = 0; k < g.size(); ++k) coeffs[k] = buckets[static_cast<std::size_t>(k) + 2];
    return Polynomial<S>(std::move(coeffs));
}

// Transposed-matrix variant: component m of a left eigenvector normalized at
// n sums forests rooted at {boundary, m} that carry the reversed way n ~> m.
// The denominator is unchanged (the pivot minor is transpose-invariant).
template <class S>
Polynomial<S> numerator_poly_transposed(const SquareMatrix<S>& g, int n, int m, int threads = 0) {
    detail::check_vertex_index(n, g.size(), "pivot");
    detail::check_vertex_index(m, g.size(), "component");
    if (n == m) throw InvalidIndex("numerator indices must differ");
    auto aug = build_augmented(g);
    ForestQuery q;
    q.required_roots = {m, aug.dagger()};
    q.path = std::make_pair(n, m);
    auto buckets = forest_sums_by_tree_count(aug, q, threads);
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()), scalar_zero<S>());
    for (int k = 0; k < g.size(); ++k) coeffs[k] = buckets[static_cast<std::size_t>(k) + 2];
    return Polynomial<S>(std::move(coeffs));
}

template <class X>
struct EigenvectorResult {
    int pivot = 0;  // 0-based; components[pivot] == 1
    X lambda{};
    std::vector<X> components;
    X denominator{};
};

// Components of the eigenvector for a caller-supplied eigenvalue, normalized
// to 1 at the pivot. X is the evaluation type (Rational, double, or
// complex<double> over a double matrix). With transpose set the result is a
// left eigenvector of G. Throws ZeroDenominator when the pivot minor's
// characteristic polynomial vanishes at lambda: either the pivot component of
// every eigenvector is zero or lambda is a multiple eigenvalue; retry with a
// different pivot.
template <class S, class X>
EigenvectorResult<X> eigenvector_components(const SquareMatrix<S>& g, const X& lambda, int pivot,
                                            bool transpose = false, int threads = 0) {
    detail::check_vertex_index(pivot, g.size(), "pivot");
    const X den = denominator_poly(g, pivot, threads).template evaluate<X>(lambda);
    if (den == X(0))
        throw ZeroDenominator("pivot minor vanishes at lambda; component " +
                              std::to_string(pivot + 1) +
                              " is zero in every eigenvector for this eigenvalue or the "
                              "eigenvalue is multiple; retry with another pivot");

    EigenvectorResult<X> r;
    r.pivot = pivot;
    r.lambda = lambda;
    r.denominator = den;
    r.components.assign(static_cast<std::size_t>(g.size()), X(0));
    r.components[static_cast<std::size_t>(pivot)] = X(1);
    for (int m = 0; m < g.size(); ++m) {
        if (m == pivot) continue;
        auto num = transpose ? numerator_poly_transposed(g, pivot, m, threads)
                             : numerator_poly(g, pivot, m, threads);
        r.components[static_cast<std::size_t>(m)] = num.template evaluate<X>(lambda) / den;
    }
    return r;
}

// C = D - G with D the diagonal of row sums; every row of C sums to zero.
template <class S>
SquareMatrix<S> kirchhoff_matrix(const SquareMatrix<S>& g) {
    SquareMatrix<S> c(g.size());
    for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j) c(i, j) = -g(i, j);
        c(i, i) = c(i, i) + g.row_sum(i);
    }
    return c;
}

// det(lambda I - C) from the factor forests of G itself (no boundary vertex):
// the lambda^k coefficient is (-1)^(N+k) times the productivity sum over
// spanning forests of G with exactly k trees. There is no forest with zero
// trees, so the constant term vanishes, matching det C = 0.
template <class S>
Polynomial<S> kirchhoff_char_poly(const SquareMatrix<S>& g, int threads = 0) {
    ForestQuery q;
    auto buckets = forest_sums_by_tree_count(digraph_of(g), q, threads);
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()) + 1, scalar_zero<S>());
    for (int k = 0; k <= g.size(); ++k)
        coeffs[k] = detail::negate_if_odd(buckets[static_cast<std::size_t>(k)], g.size() + k);
    return Polynomial<S>(std::move(coeffs));
}

}  // namespace forest_spectra
