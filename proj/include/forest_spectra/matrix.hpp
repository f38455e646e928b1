#pragma once

#include "forest_spectra/errors.hpp"
#include "forest_spectra/scalar.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace forest_spectra {

// Dense square matrix of scalars, row-major. Doubles as the generalized
// adjacency matrix of a weighted digraph: entry (i,j) is the weight of arc
// i->j, zero meaning "no arc". Indices are 0-based here; the CLI and file
// formats use 1-based labels.
template <class S>
class SquareMatrix {
public:
    SquareMatrix() = default;

    explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, scalar_zero<S>()) {
        if (n < 1) throw DimensionMismatch("matrix side must be >= 1");
    }

    static SquareMatrix from_rows(std::vector<std::vector<S>> rows) {
        const int n = static_cast<int>(rows.size());
        SquareMatrix m(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw DimensionMismatch("row " + std::to_string(i + 1) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(n));
            for (int j = 0; j < n; ++j) m(i, j) = std::move(rows[i][j]);
        }
        return m;
    }

    int size() const { return n_; }

    const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    S row_sum(int i) const {
        S s = scalar_zero<S>();
        for (int j = 0; j < n_; ++j) s = s + (*this)(i, j);
        return s;
    }

    SquareMatrix transposed() const {
        SquareMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Matrix with the given rows/columns struck out. `struck` is 0-based,
    // need not be sorted; striking everything yields the empty minor, which
    // callers treat as determinant 1, so we forbid it here.
    SquareMatrix minor_without(std::vector<int> struck) const {
        std::sort(struck.begin(), struck.end());
        struck.erase(std::unique(struck.begin(), struck.end()), struck.end());
        std::vector<int> keep;
        for (int v = 0; v < n_; ++v)
            if (!std::binary_search(struck.begin(), struck.end(), v)) keep.push_back(v);
        if (keep.empty()) throw InvalidIndex("cannot strike out every row/column");
        SquareMatrix m(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                m(static_cast<int>(i), static_cast<int>(j)) = (*this)(keep[i], keep[j]);
        return m;
    }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    int n_ = 0;
    std::vector<S> a_;
};

}  // namespace forest_spectra
