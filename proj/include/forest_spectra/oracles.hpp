#pragma once

#include "forest_spectra/matrix.hpp"
#include "forest_spectra/polynomial.hpp"

#include <vector>

namespace forest_spectra {

// Independent signed routes used to validate the signless forest formulas.
// They deliberately share no code with the forest enumeration path: the
// cycle-cover route works on the matrix's own digraph with loops included,
// the Leibniz route on raw permutations.

inline constexpr int kPermExpansionMaxN = 10;

// A vertex-disjoint union of dicircuits of the matrix's digraph, loops
// counting as 1-dicircuits carried by the diagonal. Every covered vertex has
// in-degree and out-degree exactly one within the subgraph: these are the
// supports of the permutation terms of the determinant.
struct LinearSubgraph {
    std::vector<std::pair<int, int>> arcs;  // in discovery order
    int circuit_count = 0;

    int vertex_count() const { return static_cast<int>(arcs.size()); }
};

namespace detail {

// Each subgraph is visited exactly once by always opening the next circuit
// at its smallest uncovered vertex. visit(const LinearSubgraph&, product)
template <class S, class Visit>
class LinearSubgraphEnumerator {
public:
    LinearSubgraphEnumerator(const SquareMatrix<S>& g, Visit& visit)
        : g_(g), n_(g.size()), visit_(visit), used_(g.size(), false) {}

    void run() { descend(0, scalar_one<S>()); }

private:
    void descend(int from, const S& prod) {
        visit_(current_, prod);
        for (int v = from; v < n_; ++v) {
            if (used_[v]) continue;
            used_[v] = true;
            extend(v, v, prod);
            used_[v] = false;
        }
    }

    // Grow a path anchored at `base` (the circuit's smallest vertex) from
    // `cur`; closing back to base completes a dicircuit.
    void extend(int base, int cur, const S& prod) {
        const S& back = g_(cur, base);
        if (!is_zero(back)) {
            current_.arcs.emplace_back(cur, base);
            ++current_.circuit_count;
            const S closed = prod * back;
            descend(base + 1, closed);
            --current_.circuit_count;
            current_.arcs.pop_back();
        }
        for (int t = base + 1; t < n_; ++t) {
            if (used_[t] || is_zero(g_(cur, t))) continue;
            used_[t] = true;
            current_.arcs.emplace_back(cur, t);
            const S grown = prod * g_(cur, t);
            extend(base, t, grown);
            current_.arcs.pop_back();
            used_[t] = false;
        }
    }

    const SquareMatrix<S>& g_;
    int n_;
    Visit& visit_;
    std::vector<bool> used_;
    LinearSubgraph current_;
};

}  // namespace detail

// Yields every linear subgraph of the matrix's digraph (the empty one
// included) together with its weight product.
template <class S, class Visit>
void enumerate_linear_subgraphs(const SquareMatrix<S>& g, Visit&& visit) {
    detail::LinearSubgraphEnumerator<S, Visit> e(g, visit);
    e.run();
}

// det(lambda I - G) with the coefficient of lambda^(N-i) summed over
// i-vertex linear subgraphs, signed by the number of dicircuits.
template <class S>
Polynomial<S> cycle_cover_char_poly(const SquareMatrix<S>& g) {
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()) + 1, scalar_zero<S>());
    enumerate_linear_subgraphs(g, [&](const LinearSubgraph& l, const S& prod) {
        auto& slot = coeffs[static_cast<std::size_t>(g.size() - l.vertex_count())];
        if (l.circuit_count % 2 != 0)
            slot = slot + (-prod);
        else
            slot = slot + prod;
    });
    return Polynomial<S>(std::move(coeffs));
}

namespace detail {

template <class S>
void perm_expand(const SquareMatrix<S>& g, int row, std::vector<bool>& used_col, bool odd,
                 const S& prod, S& acc) {
    if (row == g.size()) {
        if (odd)
            acc = acc + (-prod);
        else
            acc = acc + prod;
        return;
    }
    for (int col = 0; col < g.size(); ++col) {
        if (used_col[col] || is_zero(g(row, col))) continue;
        used_col[col] = true;
        // parity of the transposition count: crossings = used columns above col
        int inversions = 0;
        for (int c = col + 1; c < g.size(); ++c)
            if (used_col[c]) ++inversions;
        const S next = prod * g(row, col);
        perm_expand(g, row + 1, used_col, odd != (inversions % 2 != 0), next, acc);
        used_col[col] = false;
    }
}

}  // namespace detail

// Signed Leibniz expansion; factorial cost, guarded. Works for any ring
// scalar, including Polynomial entries, which yields an independent
// characteristic polynomial route.
template <class S>
S perm_expansion_det(const SquareMatrix<S>& g) {
    if (g.size() > kPermExpansionMaxN)
        throw TooLarge("permutation expansion refused for N > " +
                       std::to_string(kPermExpansionMaxN));
    std::vector<bool> used(g.size(), false);
    S acc = scalar_zero<S>();
    detail::perm_expand(g, 0, used, false, scalar_one<S>(), acc);
    return acc;
}

// det(lambda I - G) through the Leibniz route over degree-1 polynomial
// entries.
template <class S>
Polynomial<S> perm_expansion_char_poly(const SquareMatrix<S>& g) {
    SquareMatrix<Polynomial<S>> m(g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
            std::vector<S> c{-g(i, j), i == j ? scalar_one<S>() : scalar_zero<S>()};
            m(i, j) = Polynomial<S>(std::move(c));
        }
    Polynomial<S> p = perm_expansion_det(m);
    // pad to the canonical N+1 length
    std::vector<S> coeffs(static_cast<std::size_t>(g.size()) + 1, scalar_zero<S>());
    for (int k = 0; k <= g.size(); ++k) coeffs[k] = p.coeff(k);
    return Polynomial<S>(std::move(coeffs));
}

}  // namespace forest_spectra
