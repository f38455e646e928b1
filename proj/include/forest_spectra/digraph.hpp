#pragma once

#include "forest_spectra/matrix.hpp"

#include <algorithm>
#include <vector>

namespace forest_spectra {

template <class S>
struct Arc {
    int to;
    S weight;
};

// Adjacency-list digraph used by the forest enumerator. Out-lists are kept
// sorted by target so enumeration order is reproducible.
template <class S>
class WeightedDigraph {
public:
    WeightedDigraph() = default;
    explicit WeightedDigraph(int vertex_count) : out_(vertex_count) {}

    int vertex_count() const { return static_cast<int>(out_.size()); }

    void add_arc(int from, int to, S weight) {
        if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
            throw InvalidIndex("arc endpoint out of range");
        if (from == to) throw InvalidIndex("loops are not representable in a forest host graph");
        auto& lst = out_[from];
        auto pos = std::lower_bound(lst.begin(), lst.end(), to,
                                    [](const Arc<S>& a, int t) { return a.to < t; });
        if (pos != lst.end() && pos->to == to)
            pos->weight = std::move(weight);
        else
            lst.insert(pos, Arc<S>{to, std::move(weight)});
    }

    const std::vector<Arc<S>>& out(int v) const { return out_[v]; }

    const S* arc_weight(int from, int to) const {
        const auto& lst = out_[from];
        auto pos = std::lower_bound(lst.begin(), lst.end(), to,
                                    [](const Arc<S>& a, int t) { return a.to < t; });
        if (pos != lst.end() && pos->to == to) return &pos->weight;
        return nullptr;
    }

private:
    std::vector<std::vector<Arc<S>>> out_;
};

// The digraph of the matrix itself: arcs (i,j), i != j, with weight g_ij.
// Diagonal entries are loops and never occur in a forest, so they are not
// materialized. Zero-weight arcs are kept; the enumerator skips them unless
// asked not to.
template <class S>
WeightedDigraph<S> digraph_of(const SquareMatrix<S>& g) {
    WeightedDigraph<S> h(g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (i != j) h.add_arc(i, j, g(i, j));
    return h;
}

// The matrix's digraph extended by a boundary vertex (index n, no out-arcs).
// Every vertex i gains the arc (i, boundary) weighted by minus its full row
// sum, diagonal included; loops are dropped. For a sub-stochastic generator
// the boundary weight is the killing rate, hence nonnegative.
template <class S>
struct AugmentedDigraph {
    int n = 0;  // matrix side; the boundary vertex is index n
    WeightedDigraph<S> graph;

    int dagger() const { return n; }
};

template <class S>
AugmentedDigraph<S> build_augmented(const SquareMatrix<S>& g) {
    AugmentedDigraph<S> aug;
    aug.n = g.size();
    aug.graph = WeightedDigraph<S>(g.size() + 1);
    for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j)
            if (i != j) aug.graph.add_arc(i, j, g(i, j));
        aug.graph.add_arc(i, aug.dagger(), -g.row_sum(i));
    }
    return aug;
}

}  // namespace forest_spectra
