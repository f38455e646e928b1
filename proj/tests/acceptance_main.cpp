// Acceptance suite: every release criterion in one binary, one pass/fail
// line per criterion, nonzero exit on any failure. Tolerances are pinned
// here, not configurable.

#include "forest_spectra/numeric.hpp"
#include "forest_spectra/oracles.hpp"
#include "forest_spectra/report.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace forest_spectra;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void(std::string&)> body;  // throws or appends to the detail string on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

SquareMatrix<Rational> random_int_matrix(std::mt19937& rng, int n, int lo = -5, int hi = 5) {
    SquareMatrix<Rational> g(n);
    const int span = hi - lo + 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = Rational(lo + static_cast<int>(rng() % static_cast<unsigned>(span)));
    return g;
}

SquareMatrix<double> random_double_matrix(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> entry(-3.0, 3.0);
    SquareMatrix<double> g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = entry(rng);
    return g;
}

std::string data_dir = "data";

// ---------------------------------------------------------------- criteria

// 1. The forest route equals the cycle-cover and permutation-expansion
//    characteristic polynomials, coefficientwise, exactly.
void oracle_equivalence(std::string& detail) {
    std::mt19937 rng(1001);
    const auto started = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto g = random_int_matrix(rng, n);
        const auto forest_route = char_poly(g);
        require(forest_route == cycle_cover_char_poly(g),
                "forest route != cycle-cover route at trial " + std::to_string(trial));
        require(forest_route == perm_expansion_char_poly(g),
                "forest route != permutation route at trial " + std::to_string(trial));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    require(secs <= 60.0, "runtime budget exceeded: " + std::to_string(secs) + " s > 60 s");
    detail = "200 matrices, N in 1..6, " + std::to_string(secs).substr(0, 5) + " s";
}

// 2. Determinant and every diagonal minor equal the permutation oracle.
void determinant_and_minors(std::string& detail) {
    std::mt19937 rng(1002);
    long long minors = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto g = random_int_matrix(rng, n);
        require(determinant(g) == perm_expansion_det(g),
                "determinant mismatch at trial " + std::to_string(trial));
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> struck;
            for (int v = 0; v < n; ++v)
                if (mask & (1 << v)) struck.push_back(v);
            const Rational expect = static_cast<int>(struck.size()) == n
                                        ? Rational(1)
                                        : perm_expansion_det(g.minor_without(struck));
            require(diagonal_minor_det(g, struck) == expect,
                    "minor mismatch at trial " + std::to_string(trial));
            ++minors;
        }
    }
    detail = "50 matrices, " + std::to_string(minors) + " minors incl. det";
}

// 3. Laplace expansion over every row reproduces the determinant; this pins
//    the cofactor sign convention.
void laplace_expansion(std::string& detail) {
    std::mt19937 rng(1003);
    long long rows = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto g = random_int_matrix(rng, n);
        const Rational det = determinant(g);
        for (int row = 0; row < n; ++row) {
            Rational acc(0);
            for (int col = 0; col < n; ++col) acc += g(row, col) * cofactor(g, row, col);
            require(acc == det, "Laplace expansion failed at trial " + std::to_string(trial) +
                                    ", row " + std::to_string(row + 1));
            ++rows;
        }
    }
    detail = "50 matrices, " + std::to_string(rows) + " row expansions, sign convention locked";
}

// 4. Eigenvector components from the forest formulas annihilate (lambda I - G)
//    at every numeric eigenvalue, right and left.
void eigenvector_residuals(std::string& detail) {
    std::mt19937 rng(1004);
    int matrices = 0, pairs_checked = 0;
    while (matrices < 50) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto g = random_double_matrix(rng, n);
        const auto right = numeric_eigenpairs(g);
        const auto left = numeric_eigenpairs(g.transposed());
        double sep = 1e300;
        for (std::size_t a = 0; a < right.size(); ++a)
            for (std::size_t b = a + 1; b < right.size(); ++b)
                sep = std::min(sep, std::abs(right[a].lambda - right[b].lambda));
        if (n > 1 && sep < 1e-2) continue;  // resample near-degenerate spectra
        ++matrices;
        const double tol = 1e-8 * (1.0 + inf_norm(g));
        for (const auto& rp : right) {
            // matching left eigenpair: same eigenvalue up to conjugation order
            std::size_t match = 0;
            double best = 1e300;
            for (std::size_t i = 0; i < left.size(); ++i) {
                const double d = std::abs(left[i].lambda - rp.lambda);
                if (d < best) {
                    best = d;
                    match = i;
                }
            }
            const auto& lp = left[match];
            // pivot where both eigenvectors are comfortably nonzero: that is
            // exactly where the pivot minor's polynomial stays away from zero
            int pivot = 0;
            double score = -1.0;
            for (int i = 0; i < n; ++i) {
                const double s = std::abs(rp.vector[i]) * std::abs(lp.vector[i]);
                if (s > score) {
                    score = s;
                    pivot = i;
                }
            }
            const auto v =
                eigenvector_components<double, std::complex<double>>(g, rp.lambda, pivot, false);
            require(residual(g, rp.lambda, v.components) <= tol,
                    "right residual above tolerance (matrix " + std::to_string(matrices) + ")");
            const auto w = eigenvector_components<double, std::complex<double>>(g, rp.lambda,
                                                                                pivot, true);
            require(residual(g.transposed(), rp.lambda, w.components) <= tol,
                    "left residual above tolerance (matrix " + std::to_string(matrices) + ")");
            ++pairs_checked;
        }
    }
    detail = "50 matrices, " + std::to_string(pairs_checked) +
             " eigenpairs, right+left residuals <= 1e-8*(1+|G|)";
}

// 5. The worked 3-state chain: exponents (5,3,1), prefactors (-1,-1,-1),
//    coefficient orders (9,4,1,0), witnesses in the notes, under a second.
void chain_reproduction(std::string& detail) {
    const auto started = std::chrono::steady_clock::now();
    TaskRequest req;
    req.task = Task::tropical_spectrum;
    req.input_path = data_dir + "/metastable_chain3.json";
    const auto r = run_task(req);
    require(r.exit_code == 0, "tropical-spectrum run failed: " + r.report.dump());
    const auto& res = r.report["result"];

    const std::vector<std::string> expect_V = {"9", "4", "1", "0"};
    for (int k = 0; k <= 3; ++k) {
        require(res["coefficient_orders"][k]["V"] == expect_V[static_cast<std::size_t>(k)],
                "coefficient order k=" + std::to_string(k) + " is not " +
                    expect_V[static_cast<std::size_t>(k)]);
        require(res["coefficient_orders"][k]["m"].get<double>() == 1.0,
                "coefficient prefactor k=" + std::to_string(k) + " is not 1");
    }
    const std::vector<std::string> expect_exp = {"5", "3", "1"};
    for (int i = 0; i < 3; ++i) {
        require(res["eigenvalues"][i]["exponent"] == expect_exp[static_cast<std::size_t>(i)],
                "eigenvalue exponent mismatch");
        require(res["eigenvalues"][i]["Lambda"].get<double>() == -1.0,
                "eigenvalue prefactor mismatch");
    }
    // the notes must certify the two orders that depart from the published
    // display of this example (4 and 9, not 5 and 10), each with a witness
    bool witness4 = false, witness9 = false;
    require(r.report.contains("notes"), "report carries no notes");
    for (const auto& note : r.report["notes"]) {
        const std::string s = note.get<std::string>();
        if (s.find("k=1: order V=4") != std::string::npos &&
            s.find("3->2") != std::string::npos && s.find("2->1") != std::string::npos)
            witness4 = true;
        if (s.find("k=0: order V=9") != std::string::npos &&
            s.find("1->dagger") != std::string::npos)
            witness9 = true;
    }
    require(witness4, "no witness note certifying V_1 = 4");
    require(witness9, "no witness note certifying V_0 = 9");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    require(secs <= 1.0, "runtime budget exceeded");
    detail = "orders (9,4,1,0) with witnesses, exponents (5,3,1), Lambda (-1,-1,-1)";
}

// 6. Finite-eps arbitration of the same chain at eps = 0.1, 0.05.
void finite_eps_validation(std::string& detail) {
    const auto started = std::chrono::steady_clock::now();
    TaskRequest req;
    req.task = Task::validate;
    req.input_path = data_dir + "/metastable_chain3.json";
    req.eps = {0.1, 0.05};
    const auto r = run_task(req);
    require(r.exit_code == 0, "validate run failed: " + r.report.dump());
    const auto& eigs = r.report["result"]["eigenvalues"];
    require(eigs.size() == 3, "expected three eigenvalue entries");
    std::ostringstream errs;
    for (const auto& e : eigs) {
        require(e["exponent_rel_err"].get<double>() <= 0.05,
                "exponent estimate off by more than 5%");
        require(e["Lambda_rel_err"].get<double>() <= 0.10,
                "prefactor estimate off by more than 10%");
        errs << " " << e["exponent_rel_err"].get<double>();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    require(secs <= 1.0, "runtime budget exceeded");
    detail = "exponent rel errs:" + errs.str() + "; prefactors within 10%";
}

// 7. Signlessness: on sub-generators every forest productivity feeding the
//    characteristic sums is nonnegative.
void signless_productivities(std::string& detail) {
    std::mt19937 rng(1007);
    long long forests = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i) {
            Rational off(0);
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                g(i, j) = Rational(static_cast<int>(rng() % 6));
                off += g(i, j);
            }
            // nonpositive row sum: diagonal at most -off
            g(i, i) = -off - Rational(static_cast<int>(rng() % 4));
        }
        auto aug = build_augmented(g);
        ForestQuery q;
        q.required_roots = {aug.dagger()};
        enumerate_forests(aug, q, [&](const Forest&, const Rational& pi) {
            ++forests;
            require(pi >= 0, "negative productivity on a sub-generator at trial " +
                                 std::to_string(trial));
        });
    }
    detail = "100 sub-generators, " + std::to_string(forests) + " productivities all >= 0";
}

// 8. The Kirchhoff route equals the dense oracle char poly of C = D - G and
//    its constant term vanishes.
void kirchhoff_route(std::string& detail) {
    std::mt19937 rng(1008);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto g = random_int_matrix(rng, n);
        const auto via_forests = kirchhoff_char_poly(g);
        const auto dense = perm_expansion_char_poly(kirchhoff_matrix(g));
        require(via_forests == dense, "Kirchhoff route mismatch at trial " + std::to_string(trial));
        require(is_zero(via_forests.coefficients().front()),
                "nonzero constant term at trial " + std::to_string(trial));
    }
    detail = "50 matrices, factor-forest route == dense oracle, constant term 0";
}

// 9. Structural invariants: enumerator determinism, monic top coefficient,
//    numerator degree bound, and the tree-count partition property.
void structural_invariants(std::string& detail) {
    std::mt19937 rng(1009);

    // determinism: byte-identical enumeration streams
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto g = random_int_matrix(rng, n);
        auto aug = build_augmented(g);
        ForestQuery q;
        q.required_roots = {aug.dagger()};
        std::string run1, run2;
        enumerate_forests(aug, q,
                          [&](const Forest& f, const Rational&) { run1 += f.to_string() + ";"; });
        enumerate_forests(aug, q,
                          [&](const Forest& f, const Rational&) { run2 += f.to_string() + ";"; });
        require(run1 == run2 && !run1.empty(), "enumeration stream not reproducible");
    }

    // monic: coefficient of lambda^N is exactly one
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto g = random_int_matrix(rng, n);
        require(char_poly(g).coefficients().back() == Rational(1), "top coefficient is not 1");
    }

    // numerator degree bound N-2
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto g = random_int_matrix(rng, n);
        const int pivot = static_cast<int>(rng() % n);
        const int m = (pivot + 1 + static_cast<int>(rng() % (n - 1))) % n;
        require(numerator_poly(g, pivot, m).degree() <= n - 2, "numerator degree exceeds N-2");
    }

    // partition property on complete graphs, N <= 4: the tree-count families
    // are disjoint and exhaust the root-constrained forests
    for (int n = 2; n <= 4; ++n) {
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) g(i, j) = 1;
        auto aug = build_augmented(g);
        for (int wmask = 0; wmask < (1 << n); ++wmask) {
            ForestQuery base;
            base.include_zero_arcs = true;
            base.required_roots = {aug.dagger()};
            for (int v = 0; v < n; ++v)
                if (wmask & (1 << v)) base.required_roots.push_back(v);
            std::set<std::string> all;
            enumerate_forests(aug, base,
                              [&](const Forest& f, const Rational&) { all.insert(f.to_string()); });
            long long total = 0;
            std::set<std::string> unioned;
            const int wsize = static_cast<int>(base.required_roots.size());
            for (int k = 0; k + wsize <= n + 1; ++k) {
                ForestQuery q = base;
                q.extra_trees = k;
                enumerate_forests(aug, q, [&](const Forest& f, const Rational&) {
                    ++total;
                    unioned.insert(f.to_string());
                });
            }
            require(total == static_cast<long long>(all.size()), "families overlap or miss");
            require(unioned == all, "families do not exhaust the unconstrained enumeration");
        }
    }
    detail = "determinism, monic anchor, degree bound, partition property";
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--data") data_dir = argv[i + 1];

    std::vector<Criterion> criteria = {
        {1, "exact char-poly equals cycle-cover and permutation oracles", oracle_equivalence},
        {2, "determinant and all diagonal minors equal permutation oracles",
         determinant_and_minors},
        {3, "Laplace expansion locks the cofactor sign convention", laplace_expansion},
        {4, "eigenvector residuals, right and left, within 1e-8*(1+|G|)", eigenvector_residuals},
        {5, "3-state chain: orders, exponents and prefactors reproduced", chain_reproduction},
        {6, "finite-eps validation within 5% / 10% at eps 0.1, 0.05", finite_eps_validation},
        {7, "sub-generator forest productivities are signless", signless_productivities},
        {8, "Kirchhoff-route char poly matches the dense oracle", kirchhoff_route},
        {9, "determinism, monic anchor, degree bound, partition property", structural_invariants},
    };

    int failed = 0;
    for (auto& c : criteria) {
        std::string detail;
        try {
            c.body(detail);
            std::cout << "[PASS] criterion " << c.number << ": " << c.title;
            if (!detail.empty()) std::cout << " - " << detail;
            std::cout << "\n";
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "[FAIL] criterion " << c.number << ": " << c.title << " - " << e.what()
                      << "\n";
        }
    }
    std::cout << (failed == 0 ? "RESULT: all criteria passed"
                              : "RESULT: " + std::to_string(failed) + " criteria failed")
              << " (" << criteria.size() - failed << "/" << criteria.size() << ")\n";
    return failed == 0 ? 0 : 1;
}
