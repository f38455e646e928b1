#include "forest_spectra/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace forest_spectra {

ExponentialMarkovInput::ExponentialMarkovInput(int n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw DimensionMismatch("state count must be >= 1");
    std::map<std::pair<int, int>, bool> seen;
    for (const Entry& e : entries_) {
        if (e.from < 0 || e.from >= n_)
            throw InvalidIndex("arc source " + std::to_string(e.from + 1) + " outside 1.." +
                               std::to_string(n_));
        if (e.to < 0 || e.to > n_)
            throw InvalidIndex("arc target " + std::to_string(e.to + 1) + " outside 1.." +
                               std::to_string(n_) + " or the boundary");
        if (e.from == e.to)
            throw InvalidIndex("diagonal entries are implied by the row identity, not given");
        if (e.order < 0)
            throw InvalidQuery("exponential order must be >= 0 for a sub-generator entry");
        if (!(e.prefactor > 0)) throw InvalidQuery("prefactor must be > 0");
        if (seen.count({e.from, e.to}))
            throw InvalidQuery("duplicate arc " + std::to_string(e.from + 1) + "->" +
                               std::to_string(e.to + 1));
        seen[{e.from, e.to}] = true;
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return std::make_pair(a.from, a.to) < std::make_pair(b.from, b.to);
    });
}

AugmentedDigraph<AsymptoticScalar> ExponentialMarkovInput::augmented() const {
    AugmentedDigraph<AsymptoticScalar> aug;
    aug.n = n_;
    aug.graph = WeightedDigraph<AsymptoticScalar>(n_ + 1);
    for (const Entry& e : entries_)
        aug.graph.add_arc(e.from, e.to, AsymptoticScalar(e.order, e.prefactor));
    return aug;
}

SquareMatrix<double> ExponentialMarkovInput::realize(double eps, bool* underflow) const {
    if (!(eps > 0)) throw InvalidQuery("eps must be positive");
    SquareMatrix<double> m(n_);
    std::vector<double> kill(static_cast<std::size_t>(n_), 0.0);
    bool under = false;
    for (const Entry& e : entries_) {
        const double v = e.prefactor * std::exp(-rational_to_double(e.order) / eps);
        if (v == 0.0) under = true;
        if (e.to == n_)
            kill[static_cast<std::size_t>(e.from)] += v;
        else
            m(e.from, e.to) += v;
    }
    for (int i = 0; i < n_; ++i) {
        double diag = -kill[static_cast<std::size_t>(i)];
        for (int j = 0; j < n_; ++j)
            if (j != i) diag -= m(i, j);
        m(i, i) = diag;
    }
    if (underflow != nullptr) *underflow = under;
    return m;
}

std::vector<AsymptoticScalar> tropical_char_poly(const ExponentialMarkovInput& input,
                                                 int threads) {
    return char_poly(input.augmented(), threads).coefficients();
}

std::vector<CoefficientWitness> tropical_witnesses(const ExponentialMarkovInput& input) {
    auto aug = input.augmented();
    std::vector<CoefficientWitness> w(static_cast<std::size_t>(input.size()) + 1);
    for (int k = 0; k <= input.size(); ++k) w[static_cast<std::size_t>(k)].k = k;

    ForestQuery q;
    q.required_roots = {aug.dagger()};
    enumerate_forests(aug, q, [&](const Forest& f, const AsymptoticScalar& pi) {
        if (pi.tropically_zero()) return;
        auto& slot = w[static_cast<std::size_t>(f.tree_count() - 1)];
        if (slot.value.tropically_zero() || pi.order() < slot.value.order()) {
            slot.value = pi;
            slot.minimizer_count = 1;
            slot.example = f;
        } else if (pi.order() == slot.value.order()) {
            slot.value = slot.value + pi;
            ++slot.minimizer_count;
        }
    });
    return w;
}

NewtonPolygon newton_polygon(const std::vector<AsymptoticScalar>& coefficient_orders) {
    if (coefficient_orders.empty()) throw Error("empty coefficient list");
    const int n = static_cast<int>(coefficient_orders.size()) - 1;
    const AsymptoticScalar& top = coefficient_orders[static_cast<std::size_t>(n)];
    if (top.tropically_zero() || !top.order().is_zero())
        throw Error("top coefficient must have exponential order 0 (monic anchor)");

    std::vector<std::pair<int, Rational>> pts;
    for (int k = 0; k <= n; ++k) {
        const auto& c = coefficient_orders[static_cast<std::size_t>(k)];
        if (!c.tropically_zero()) pts.emplace_back(k, c.order());
    }

    // Monotone-chain lower hull over exact rational cross products.
    std::vector<std::pair<int, Rational>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it turns strictly left of a->p
            Rational cross = Rational(b.first - a.first) * (p.second - a.second) -
                             Rational(p.first - a.first) * (b.second - a.second);
            if (cross < 0)
                hull.pop_back();  // b on or above the chord a->p
            else
                break;
        }
        hull.push_back(p);
    }

    // Prune interior collinear points so hull vertices are extreme, then
    // check whether every finite point sits on the hull.
    std::vector<std::pair<int, Rational>> vertices;
    for (const auto& p : hull) {
        while (vertices.size() >= 2) {
            const auto& a = vertices[vertices.size() - 2];
            const auto& b = vertices[vertices.size() - 1];
            Rational cross = Rational(b.first - a.first) * (p.second - a.second) -
                             Rational(p.first - a.first) * (b.second - a.second);
            if (cross == 0)
                vertices.pop_back();
            else
                break;
        }
        vertices.push_back(p);
    }

    NewtonPolygon poly;
    poly.hull = vertices;
    poly.convexity_ok = true;
    std::size_t seg = 0;
    for (const auto& p : pts) {
        while (seg + 1 < vertices.size() && vertices[seg + 1].first < p.first) ++seg;
        if (p.first == vertices[seg].first) {
            if (p.second != vertices[seg].second) poly.convexity_ok = false;
            continue;
        }
        const auto& a = vertices[seg];
        const auto& b = vertices[seg + 1];
        Rational lhs = (p.second - a.second) * Rational(b.first - a.first);
        Rational rhs = (b.second - a.second) * Rational(p.first - a.first);
        if (lhs != rhs) poly.convexity_ok = false;
    }
    return poly;
}

std::vector<HullSegment> hull_segments(const NewtonPolygon& polygon) {
    std::vector<HullSegment> segs;
    for (std::size_t i = 0; i + 1 < polygon.hull.size(); ++i) {
        const auto& a = polygon.hull[i];
        const auto& b = polygon.hull[i + 1];
        HullSegment s;
        s.multiplicity = b.first - a.first;
        s.exponent = (a.second - b.second) / Rational(b.first - a.first);
        segs.push_back(std::move(s));
    }
    return segs;
}

std::vector<EigenvalueAsymptotic> eigenvalue_asymptotics(
    const std::vector<AsymptoticScalar>& coefficient_orders, const NewtonPolygon& polygon) {
    const int n = static_cast<int>(coefficient_orders.size()) - 1;
    for (const auto& c : coefficient_orders)
        if (c.tropically_zero())
            throw DegenerateSlopes(
                "a characteristic coefficient is tropically zero; only per-segment "
                "asymptotics are available");
    if (!polygon.convexity_ok)
        throw DegenerateSlopes("coefficient orders are not a convex chain; only per-segment "
                               "asymptotics are available");
    if (static_cast<int>(polygon.hull.size()) != n + 1)
        throw DegenerateSlopes("repeated hull slopes; eigenvalue orders are degenerate and "
                               "prefactors are not separable per eigenvalue");

    std::vector<EigenvalueAsymptotic> out;
    for (int k = 1; k <= n; ++k) {
        const auto& lo = coefficient_orders[static_cast<std::size_t>(k - 1)];
        const auto& hi = coefficient_orders[static_cast<std::size_t>(k)];
        EigenvalueAsymptotic e;
        e.k = k;
        e.exponent = lo.order() - hi.order();
        e.prefactor = -lo.prefactor() / hi.prefactor();
        out.push_back(std::move(e));
    }
    // exponents are strictly decreasing in k here, so this is k ascending,
    // slowest (most negative order) eigenvalue first
    std::sort(out.begin(), out.end(),
              [](const EigenvalueAsymptotic& a, const EigenvalueAsymptotic& b) {
                  return a.exponent > b.exponent;
              });
    return out;
}

AsymptoticSpectrum analyze_spectrum(const ExponentialMarkovInput& input, int threads) {
    AsymptoticSpectrum s;
    s.coefficient_orders = tropical_char_poly(input, threads);
    s.polygon = newton_polygon(s.coefficient_orders);
    s.segments = hull_segments(s.polygon);
    try {
        s.eigenvalues = eigenvalue_asymptotics(s.coefficient_orders, s.polygon);
        s.simple = true;
    } catch (const DegenerateSlopes&) {
        s.simple = false;
    }
    return s;
}

std::vector<double> graded_real_roots(const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    for (double c : coeffs)
        if (!(c > 0))
            throw ConvergenceFailure(
                "graded root extraction needs strictly positive coefficients; got a "
                "nonpositive one (degenerate or non-sub-generator input)");

    auto horner = [&](double x, double& value, double& derivative) {
        double p = 0.0, dp = 0.0;
        for (int k = n; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + coeffs[static_cast<std::size_t>(k)];
        }
        value = p;
        derivative = dp;
    };

    std::vector<double> roots;
    for (int k = 1; k <= n; ++k) {
        double lam = -coeffs[static_cast<std::size_t>(k - 1)] / coeffs[static_cast<std::size_t>(k)];
        for (int it = 0; it < 80; ++it) {
            double p, dp;
            horner(lam, p, dp);
            if (p == 0.0 || dp == 0.0) break;
            const double step = p / dp;
            lam -= step;
            if (std::abs(step) <= 1e-15 * std::abs(lam)) break;
        }
        if (!std::isfinite(lam) || !(lam < 0))
            throw ConvergenceFailure("root refinement left the negative axis for k = " +
                                     std::to_string(k) +
                                     "; magnitudes are not well separated");
        roots.push_back(lam);
    }
    return roots;
}

ValidationReport validate_asymptotics(const ExponentialMarkovInput& input,
                                      std::vector<double> eps_list, int threads) {
    for (double e : eps_list)
        if (!(e > 0)) throw InvalidQuery("eps values must be positive");
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    eps_list.erase(std::unique(eps_list.begin(), eps_list.end()), eps_list.end());
    if (eps_list.size() < 2)
        throw InvalidQuery("validation needs at least two distinct eps values");

    const auto spectrum = analyze_spectrum(input, threads);
    if (!spectrum.simple)
        throw DegenerateSlopes("validation requires per-eigenvalue asymptotics (simple orders)");

    ValidationReport report;
    report.eps = eps_list;

    // lambda_k(eps), k = 1..N, recovered from signless coefficients
    std::vector<std::vector<double>> lambdas;
    for (double eps : eps_list) {
        bool under = false;
        auto m = input.realize(eps, &under);
        report.underflow = report.underflow || under;
        auto coeffs = char_poly(m, threads).coefficients();
        lambdas.push_back(graded_real_roots(coeffs));
    }

    const double e1 = eps_list[eps_list.size() - 2];
    const double e2 = eps_list[eps_list.size() - 1];
    const std::size_t i1 = eps_list.size() - 2, i2 = eps_list.size() - 1;

    for (const auto& pred : spectrum.eigenvalues) {
        const std::size_t idx = static_cast<std::size_t>(pred.k - 1);
        const double l1 = lambdas[i1][idx];
        const double l2 = lambdas[i2][idx];
        const double f1 = -e1 * std::log(std::abs(l1));
        const double f2 = -e2 * std::log(std::abs(l2));
        const double slope = (f1 - f2) / (e1 - e2);

        ValidationEntry entry;
        entry.k = pred.k;
        entry.exponent_predicted = rational_to_double(pred.exponent);
        entry.prefactor_predicted = pred.prefactor;
        entry.exponent_estimate = f2 - slope * e2;
        entry.prefactor_estimate = l2 * std::exp(entry.exponent_predicted / e2);
        entry.exponent_rel_err = std::abs(entry.exponent_estimate - entry.exponent_predicted) /
                                 std::max(std::abs(entry.exponent_predicted), 1e-300);
        entry.prefactor_rel_err = std::abs(entry.prefactor_estimate - entry.prefactor_predicted) /
                                  std::max(std::abs(entry.prefactor_predicted), 1e-300);
        report.eigenvalues.push_back(entry);
    }
    return report;
}

}  // namespace forest_spectra
