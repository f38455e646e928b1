#include "forest_spectra/calculus.hpp"

#include "forest_spectra/numeric.hpp"
#include "forest_spectra/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace forest_spectra;

namespace {

SquareMatrix<Rational> from_ints(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> v;
        for (int x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return SquareMatrix<Rational>::from_rows(std::move(r));
}

std::vector<Rational> rat(std::initializer_list<int> xs) {
    std::vector<Rational> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("characteristic polynomial of small matrices") {
    CHECK(char_poly(from_ints({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})) ==
          Polynomial<Rational>(rat({0, 0, 0, 1})));
    CHECK(char_poly(from_ints({{2, 1}, {1, 3}})) == Polynomial<Rational>(rat({5, -5, 1})));
    CHECK(char_poly(from_ints({{0, 1}, {1, 0}})) == Polynomial<Rational>(rat({-1, 0, 1})));
}

TEST_CASE("determinants through the boundary-rooted forest sum") {
    CHECK(determinant(from_ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == Rational(1));
    CHECK(determinant(from_ints({{2, 1}, {1, 3}})) == Rational(5));
    CHECK(determinant(from_ints({{1, 2}, {3, 4}})) == Rational(-2));
}

TEST_CASE("diagonal minors") {
    auto g = from_ints({{2, 1}, {1, 3}});
    CHECK(diagonal_minor_det(g, {1}) == Rational(2));  // strike row/col 2 -> [2]
    CHECK(diagonal_minor_det(g, {}) == Rational(5));
    CHECK(diagonal_minor_det(g, {0, 1}) == Rational(1));  // empty minor
    CHECK_THROWS_AS(diagonal_minor_det(g, {2}), InvalidIndex);
}

TEST_CASE("cofactors agree with the classical checkerboard adjunct") {
    auto g = from_ints({{2, 1}, {1, 3}});
    CHECK(cofactor(g, 0, 0) == Rational(3));
    CHECK(cofactor(g, 0, 1) == Rational(-1));
    CHECK(cofactor(g, 1, 0) == Rational(-1));
    CHECK(cofactor(g, 1, 1) == Rational(2));

    auto id3 = from_ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(cofactor(id3, 0, 1) == Rational(0));
    CHECK_THROWS_AS(cofactor(g, 0, 5), InvalidIndex);
}

TEST_CASE("Laplace expansion reproduces the determinant on every row") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(static_cast<int>(rng() % 11) - 5);
        const Rational det = determinant(g);
        for (int row = 0; row < n; ++row) {
            Rational acc(0);
            for (int col = 0; col < n; ++col) acc += g(row, col) * cofactor(g, row, col);
            CHECK(acc == det);
        }
    }
}

TEST_CASE("denominator polynomial is the pivot minor's characteristic polynomial") {
    auto g = from_ints({{2, 1}, {1, 3}});
    CHECK(denominator_poly(g, 0) == Polynomial<Rational>(rat({-3, 1})));

    auto flip = from_ints({{0, 1}, {1, 0}});
    CHECK(denominator_poly(flip, 1) == Polynomial<Rational>(rat({0, 1})));

    SquareMatrix<Rational> one(1);
    one(0, 0) = 9;
    CHECK(denominator_poly(one, 0) == Polynomial<Rational>::constant(Rational(1)));
}

TEST_CASE("numerator polynomial and its degree bound") {
    auto flip = from_ints({{0, 1}, {1, 0}});
    CHECK(numerator_poly(flip, 0, 1) == Polynomial<Rational>::constant(Rational(1)));

    auto g = from_ints({{2, 1}, {1, 3}});
    CHECK(numerator_poly(g, 0, 1) == Polynomial<Rational>::constant(Rational(1)));

    // a vertex with no outgoing arcs cannot start a way
    auto dead = from_ints({{1, 2, 0}, {0, 0, 0}, {3, 1, 2}});
    CHECK(numerator_poly(dead, 0, 1).zero_poly());

    // degree <= N-2 on random inputs
    std::mt19937 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        SquareMatrix<Rational> r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = Rational(static_cast<int>(rng() % 11) - 5);
        const int piv = static_cast<int>(rng() % n);
        const int m = (piv + 1 + static_cast<int>(rng() % (n - 1))) % n;
        CHECK(numerator_poly(r, piv, m).degree() <= n - 2);
    }
}

TEST_CASE("eigenvector components for the swap matrix") {
    auto flip = from_ints({{0, 1}, {1, 0}});
    auto plus = eigenvector_components<Rational, Rational>(flip, Rational(1), 0);
    CHECK(plus.components == std::vector<Rational>{Rational(1), Rational(1)});
    auto minus = eigenvector_components<Rational, Rational>(flip, Rational(-1), 0);
    CHECK(minus.components == std::vector<Rational>{Rational(1), Rational(-1)});
}

TEST_CASE("zero denominator signals an unusable pivot") {
    // lambda = 1 is an eigenvalue of the pivot minor here: G_11 = [1]
    auto g = from_ints({{0, 1}, {0, 1}});
    CHECK_THROWS_AS((eigenvector_components<Rational, Rational>(g, Rational(1), 0)),
                    ZeroDenominator);
}

TEST_CASE("float eigenvectors at numeric eigenvalues have tiny residuals") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    int tested = 0;
    while (tested < 10) {
        const int n = 2 + static_cast<int>(rng() % 4);
        SquareMatrix<double> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = entry(rng);
        auto pairs = numeric_eigenpairs(g);
        double sep = 1e9;
        for (std::size_t a = 0; a < pairs.size(); ++a)
            for (std::size_t b = a + 1; b < pairs.size(); ++b)
                sep = std::min(sep, std::abs(pairs[a].lambda - pairs[b].lambda));
        if (sep < 1e-3) continue;
        ++tested;
        const double tol = 1e-8 * (1.0 + inf_norm(g));
        for (const auto& p : pairs) {
            int pivot = 0;
            for (int i = 0; i < n; ++i)
                if (std::abs(p.vector[i]) > std::abs(p.vector[pivot])) pivot = i;
            auto r = eigenvector_components<double, std::complex<double>>(g, p.lambda, pivot);
            CHECK(residual(g, p.lambda, r.components) <= tol);
        }
    }
}

TEST_CASE("Kirchhoff matrix has zero row sums") {
    auto flip = from_ints({{0, 1}, {1, 0}});
    auto c = kirchhoff_matrix(flip);
    CHECK(c(0, 0) == Rational(1));
    CHECK(c(0, 1) == Rational(-1));
    CHECK(c(1, 0) == Rational(-1));
    CHECK(c(1, 1) == Rational(1));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(static_cast<int>(rng() % 9) - 4);
        auto ck = kirchhoff_matrix(g);
        for (int i = 0; i < n; ++i) CHECK(ck.row_sum(i) == Rational(0));
    }

    SquareMatrix<Rational> zero(3);
    auto cz = kirchhoff_matrix(zero);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(cz(i, j) == Rational(0));
}

TEST_CASE("Kirchhoff characteristic polynomial from factor forests") {
    // symmetric triangle: lambda (lambda - 3)^2
    auto tri = from_ints({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(kirchhoff_char_poly(tri) == Polynomial<Rational>(rat({0, 9, -6, 1})));

    SquareMatrix<Rational> zero(4);
    CHECK(kirchhoff_char_poly(zero) == Polynomial<Rational>(rat({0, 0, 0, 0, 1})));

    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(static_cast<int>(rng() % 9) - 4);
        auto kch = kirchhoff_char_poly(g);
        CHECK(is_zero(kch.coefficients().front()));
        CHECK(kch == perm_expansion_char_poly(kirchhoff_matrix(g)));
    }
}

TEST_CASE("char poly evaluated at zero matches the determinant with its sign") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(static_cast<int>(rng() % 11) - 5);
        const auto cp = char_poly(g);
        Rational at_zero = cp.evaluate<Rational>(Rational(0));
        Rational expect = determinant(g);
        if (n % 2 != 0) expect = -expect;
        CHECK(at_zero == expect);
        CHECK(cp.coefficients().back() == Rational(1));
    }
}

TEST_CASE("minor-sum consistency: each coefficient aggregates diagonal minors") {
    // coeff k of det(lambda I - G) = (-1)^(N-k) * sum over diagonal minors of
    // order N-k, i.e. over struck sets R with |R| = k
    std::mt19937 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(static_cast<int>(rng() % 11) - 5);
        const auto cp = char_poly(g);
        for (int k = 0; k <= n; ++k) {
            Rational sum(0);
            for (int mask = 0; mask < (1 << n); ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
                std::vector<int> struck;
                for (int v = 0; v < n; ++v)
                    if (mask & (1 << v)) struck.push_back(v);
                sum += diagonal_minor_det(g, struck);
            }
            if ((n - k) % 2 != 0) sum = -sum;
            CHECK(cp.coeff(k) == sum);
        }
    }
}
