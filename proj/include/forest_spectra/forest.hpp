#pragma once

#include "forest_spectra/digraph.hpp"

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace forest_spectra {

// A rooted spanning forest of a host digraph: every vertex appears, each
// non-root vertex has exactly one out-arc (its parent link), roots have none,
// and parent links never cycle. Components are in-trees directed toward
// their roots.
class Forest {
public:
    static constexpr int kRoot = -1;

    explicit Forest(std::vector<int> parent) : parent_(std::move(parent)) {}

    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int parent(int v) const { return parent_[v]; }
    bool is_root(int v) const { return parent_[v] == kRoot; }

    int tree_count() const {
        int t = 0;
        for (int p : parent_)
            if (p == kRoot) ++t;
        return t;
    }

    std::vector<int> roots() const {
        std::vector<int> r;
        for (int v = 0; v < vertex_count(); ++v)
            if (is_root(v)) r.push_back(v);
        return r;
    }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> a;
        for (int v = 0; v < vertex_count(); ++v)
            if (!is_root(v)) a.emplace_back(v, parent_[v]);
        return a;
    }

    bool has_arc(int from, int to) const { return parent_[from] == to; }

    // Canonical text form, used by determinism checks and report notes.
    // Vertices print 1-based; the last index of an augmented host is the
    // boundary, but that labeling is the caller's concern.
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v = 0; v < vertex_count(); ++v) {
            if (is_root(v)) continue;
            if (!first) s += ",";
            first = false;
            s += std::to_string(v + 1) + ">" + std::to_string(parent_[v] + 1);
        }
        s += "}";
        return s;
    }

    friend bool operator==(const Forest& a, const Forest& b) { return a.parent_ == b.parent_; }

private:
    std::vector<int> parent_;
};

// True iff following parent links from `from` reaches `to`. The empty way
// (from == to) counts as present.
inline bool has_path(const Forest& f, int from, int to) {
    int v = from;
    while (true) {
        if (v == to) return true;
        if (f.is_root(v)) return false;
        v = f.parent(v);
    }
}

// Constraint set for forest enumeration.
//
//   required_roots  the root set must contain these vertices
//   extra_trees     total trees = extra_trees + |required_roots|;
//                   unset = any tree count
//   path            the forest must contain the way path.first ~> path.second
//   required_arcs / forbidden_arcs   testing aids
//   include_zero_arcs   also emit forests using zero-weight arcs (their
//                       productivity vanishes; useful only for counting)
struct ForestQuery {
    std::vector<int> required_roots;
    std::optional<int> extra_trees;
    std::optional<std::pair<int, int>> path;
    std::vector<std::pair<int, int>> required_arcs;
    std::vector<std::pair<int, int>> forbidden_arcs;
    bool include_zero_arcs = false;
};

// Product of the forest's arc weights over the host graph; the empty forest
// gives the empty product, one.
template <class S>
S productivity(const Forest& f, const WeightedDigraph<S>& h) {
    S p = scalar_one<S>();
    for (int v = 0; v < f.vertex_count(); ++v) {
        if (f.is_root(v)) continue;
        const S* w = h.arc_weight(v, f.parent(v));
        if (w == nullptr)
            throw MissingArc("forest uses arc " + std::to_string(v + 1) + "->" +
                             std::to_string(f.parent(v) + 1) + " absent from the host graph");
        p = p * *w;
    }
    return p;
}

namespace detail {

// Backtracking enumerator. Vertices take their choice in ascending order;
// for each vertex the root option comes first, then out-arcs by ascending
// target, which pins a deterministic output order. A cycle can only close
// when its highest-numbered vertex picks its arc, so walking already-assigned
// parent links from the candidate target detects it.
template <class S>
class ForestEnumerator {
public:
    static constexpr int kUnassigned = -2;

    ForestEnumerator(const WeightedDigraph<S>& h, const ForestQuery& q)
        : host_(h), query_(q), vcount_(h.vertex_count()) {
        is_required_root_.assign(vcount_, false);
        for (int v : q.required_roots) {
            if (v < 0 || v >= vcount_) throw InvalidQuery("required root out of range");
            is_required_root_[v] = true;
        }
        int wsize = 0;
        for (bool b : is_required_root_)
            if (b) ++wsize;
        if (q.extra_trees) {
            if (*q.extra_trees < 0) throw InvalidQuery("tree count below root-set size");
            if (*q.extra_trees + wsize > vcount_)
                throw InvalidQuery("requested " + std::to_string(*q.extra_trees + wsize) +
                                   " trees on " + std::to_string(vcount_) + " vertices");
            target_trees_ = *q.extra_trees + wsize;
        }
        if (q.path) {
            if (q.path->first < 0 || q.path->first >= vcount_ || q.path->second < 0 ||
                q.path->second >= vcount_)
                throw InvalidQuery("path endpoint out of range");
        }

        std::vector<int> required_to(vcount_, kUnassigned);
        for (auto [a, b] : q.required_arcs) {
            if (a < 0 || a >= vcount_ || b < 0 || b >= vcount_)
                throw InvalidQuery("required arc out of range");
            if (required_to[a] != kUnassigned && required_to[a] != b)
                conflicting_requirements_ = true;  // out-degree 1: no forest can satisfy both
            required_to[a] = b;
        }

        auto forbidden = [&](int a, int b) {
            for (auto [x, y] : q.forbidden_arcs)
                if (x == a && y == b) return true;
            return false;
        };

        // Per-vertex usable choices after static filters.
        choices_.resize(vcount_);
        for (int v = 0; v < vcount_; ++v) {
            auto& c = choices_[v];
            c.root_allowed = required_to[v] == kUnassigned;
            if (is_required_root_[v]) {
                if (required_to[v] != kUnassigned) conflicting_requirements_ = true;
                continue;  // no arc choices
            }
            for (const Arc<S>& a : host_.out(v)) {
                if (!q.include_zero_arcs && is_zero(a.weight)) continue;
                if (forbidden(v, a.to)) continue;
                if (required_to[v] != kUnassigned && a.to != required_to[v]) continue;
                c.arcs.push_back(&a);
            }
            if (required_to[v] != kUnassigned) {
                c.root_allowed = false;
                if (c.arcs.empty()) conflicting_requirements_ = true;
            }
        }

        // Suffix bounds on how many roots the unprocessed tail can still add.
        min_tail_roots_.assign(vcount_ + 1, 0);
        max_tail_roots_.assign(vcount_ + 1, 0);
        for (int v = vcount_ - 1; v >= 0; --v) {
            const bool forced = is_required_root_[v] || (choices_[v].arcs.empty() && choices_[v].root_allowed);
            min_tail_roots_[v] = min_tail_roots_[v + 1] + (forced ? 1 : 0);
            max_tail_roots_[v] = max_tail_roots_[v + 1] + (choices_[v].root_allowed ? 1 : 0);
        }

        parent_.assign(vcount_, kUnassigned);
    }

    // Number of choices vertex 0 has; this is the partition fan-out.
    int partition_count() const {
        if (vcount_ == 0) return 0;
        return (choices_[0].root_allowed ? 1 : 0) + static_cast<int>(choices_[0].arcs.size());
    }

    // visit(const Forest&, const S& productivity). pinned_first, when set,
    // restricts vertex 0 to its pinned_first-th choice (root first, then arcs).
    template <class Visit>
    void run(Visit&& visit, std::optional<int> pinned_first = std::nullopt) {
        if (conflicting_requirements_) return;
        if (vcount_ == 0) return;
        pinned_first_ = pinned_first;
        descend(0, 0, scalar_one<S>(), visit);
    }

private:
    struct Choices {
        bool root_allowed = true;
        std::vector<const Arc<S>*> arcs;
    };

    // parent_ values are kUnassigned, kRoot or a vertex id, so the walk stops
    // at the first vertex without an assigned arc.
    bool creates_cycle(int from, int to) const {
        for (int v = to; v >= 0; v = parent_[v])
            if (v == from) return true;
        return false;
    }

    template <class Visit>
    void descend(int v, int roots_so_far, const S& prod, Visit&& visit) {
        if (target_trees_) {
            if (roots_so_far + max_tail_roots_[v] < *target_trees_) return;
            if (roots_so_far + min_tail_roots_[v] > *target_trees_) return;
        }
        if (v == vcount_) {
            Forest f(parent_);
            if (query_.path && !has_path(f, query_.path->first, query_.path->second)) return;
            visit(f, prod);
            return;
        }
        const Choices& c = choices_[v];
        int choice_index = 0;
        if (c.root_allowed) {
            if (!pinned_first_ || v != 0 || *pinned_first_ == choice_index) {
                parent_[v] = Forest::kRoot;
                descend(v + 1, roots_so_far + 1, prod, visit);
                parent_[v] = kUnassigned;
            }
            ++choice_index;
        }
        for (const Arc<S>* a : c.arcs) {
            if (!pinned_first_ || v != 0 || *pinned_first_ == choice_index) {
                if (!creates_cycle(v, a->to)) {
                    parent_[v] = a->to;
                    descend(v + 1, roots_so_far, prod * a->weight, visit);
                    parent_[v] = kUnassigned;
                }
            }
            ++choice_index;
        }
    }

    const WeightedDigraph<S>& host_;
    const ForestQuery& query_;
    int vcount_;
    std::optional<int> target_trees_;
    std::optional<int> pinned_first_;
    bool conflicting_requirements_ = false;
    std::vector<bool> is_required_root_;
    std::vector<Choices> choices_;
    std::vector<int> min_tail_roots_, max_tail_roots_;
    std::vector<int> parent_;
};

inline int env_thread_cap() {
    if (const char* s = std::getenv("FOREST_SPECTRA_THREADS")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace detail

// 0 = take the FOREST_SPECTRA_THREADS environment cap (default 1).
inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    return detail::env_thread_cap();
}

// Yields every forest of the host satisfying the query exactly once, in a
// deterministic order, together with its productivity. Purely sequential;
// the summing entry points below are the parallel path.
template <class S, class Visit>
void enumerate_forests(const WeightedDigraph<S>& h, const ForestQuery& q, Visit&& visit) {
    detail::ForestEnumerator<S> e(h, q);
    e.run(visit);
}

template <class S, class Visit>
void enumerate_forests(const AugmentedDigraph<S>& h, const ForestQuery& q, Visit&& visit) {
    enumerate_forests(h.graph, q, visit);
}

// Per-tree-count productivity sums: result[t] = sum of productivities of the
// matching forests with exactly t trees (t = 0..V). The enumeration splits
// into partitions on vertex 0's choice; each partition accumulates
// sequentially and partials are folded in partition order, so the result is
// identical for every thread count, and in floating point the summation
// order is fixed.
template <class S>
std::vector<S> forest_sums_by_tree_count(const WeightedDigraph<S>& h, const ForestQuery& q,
                                         int threads = 0) {
    const int vcount = h.vertex_count();
    std::vector<S> total(static_cast<std::size_t>(vcount) + 1, scalar_zero<S>());
    if (vcount == 0) return total;

    detail::ForestEnumerator<S> probe(h, q);
    const int parts = probe.partition_count();
    if (parts == 0) return total;
    threads = std::min(resolve_thread_count(threads), parts);

    std::vector<std::vector<S>> partials(parts);
    auto run_partition = [&](int p) {
        std::vector<S> bucket(static_cast<std::size_t>(vcount) + 1, scalar_zero<S>());
        detail::ForestEnumerator<S> e(h, q);
        e.run([&](const Forest& f, const S& prod) {
            auto& slot = bucket[static_cast<std::size_t>(f.tree_count())];
            slot = slot + prod;
        },
              p);
        partials[p] = std::move(bucket);
    };

    if (threads <= 1) {
        for (int p = 0; p < parts; ++p) run_partition(p);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int p = next.fetch_add(1); p < parts; p = next.fetch_add(1)) run_partition(p);
            });
        for (auto& th : pool) th.join();
    }

    for (int p = 0; p < parts; ++p)
        for (std::size_t t = 0; t < total.size(); ++t) total[t] = total[t] + partials[p][t];
    return total;
}

template <class S>
std::vector<S> forest_sums_by_tree_count(const AugmentedDigraph<S>& h, const ForestQuery& q,
                                         int threads = 0) {
    return forest_sums_by_tree_count(h.graph, q, threads);
}

// Sum of productivities over the query's forest set.
template <class S>
S forest_sum(const WeightedDigraph<S>& h, const ForestQuery& q, int threads = 0) {
    auto buckets = forest_sums_by_tree_count(h, q, threads);
    S s = scalar_zero<S>();
    for (const S& b : buckets) s = s + b;
    return s;
}

}  // namespace forest_spectra
