#pragma once

#include "forest_spectra/calculus.hpp"
#include "forest_spectra/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace forest_spectra {

// Leading-order model of a quantity m * exp(-V/eps): exact rational
// exponential order V plus a floating prefactor m. Addition keeps the
// smaller order and, on an exact tie, adds prefactors; multiplication adds
// orders and multiplies prefactors. There is no negation: this scalar exists
// precisely because the forest sums it feeds are signless, and exact order
// arithmetic makes ties a semantic branch rather than a tolerance call.
class AsymptoticScalar {
public:
    // tropical zero: order +infinity
    AsymptoticScalar() = default;

    AsymptoticScalar(Rational order, double prefactor) {
        if (prefactor < 0)
            throw NegationAttempted("asymptotic prefactor must be nonnegative, got " +
                                    std::to_string(prefactor));
        if (prefactor > 0) {
            order_ = std::move(order);
            prefactor_ = prefactor;
        }
    }

    static AsymptoticScalar zero() { return AsymptoticScalar(); }
    static AsymptoticScalar one() { return AsymptoticScalar(Rational(0), 1.0); }

    bool tropically_zero() const { return !order_.has_value(); }
    const Rational& order() const { return *order_; }  // finite values only
    double prefactor() const { return prefactor_; }

    friend AsymptoticScalar operator+(const AsymptoticScalar& a, const AsymptoticScalar& b) {
        if (a.tropically_zero()) return b;
        if (b.tropically_zero()) return a;
        if (*a.order_ < *b.order_) return a;
        if (*b.order_ < *a.order_) return b;
        return AsymptoticScalar(*a.order_, a.prefactor_ + b.prefactor_);
    }

    friend AsymptoticScalar operator*(const AsymptoticScalar& a, const AsymptoticScalar& b) {
        if (a.tropically_zero() || b.tropically_zero()) return zero();
        return AsymptoticScalar(*a.order_ + *b.order_, a.prefactor_ * b.prefactor_);
    }

    friend AsymptoticScalar operator-(const AsymptoticScalar&) {
        throw NegationAttempted(
            "asymptotic scalars cannot be negated; the mode is restricted to signless sums");
    }

    friend bool operator==(const AsymptoticScalar& a, const AsymptoticScalar& b) {
        if (a.tropically_zero() || b.tropically_zero())
            return a.tropically_zero() == b.tropically_zero();
        return *a.order_ == *b.order_ && a.prefactor_ == b.prefactor_;
    }

private:
    std::optional<Rational> order_;
    double prefactor_ = 0.0;
};

template <>
struct scalar_traits<AsymptoticScalar> {
    static AsymptoticScalar zero() { return AsymptoticScalar::zero(); }
    static AsymptoticScalar one() { return AsymptoticScalar::one(); }
    static bool is_zero(const AsymptoticScalar& v) { return v.tropically_zero(); }
};

// A Markov-with-killing generator whose entries are exponentially small:
// off-diagonal rates and per-vertex killing rates given as (order, prefactor)
// pairs. The diagonal is not stored; it is determined by the sub-generator
// identity M_ii = -M_i,kill - sum_{j != i} M_ij, which is what keeps every
// forest term nonnegative.
class ExponentialMarkovInput {
public:
    struct Entry {
        int from = 0;       // 0-based
        int to = 0;         // 0-based; == n means the killing/boundary target
        Rational order;     // >= 0
        double prefactor = 0.0;  // > 0
    };

    ExponentialMarkovInput(int n, std::vector<Entry> entries);

    int size() const { return n_; }
    const std::vector<Entry>& entries() const { return entries_; }
    int boundary() const { return n_; }

    // Host graph for the generic forest machinery; absent arcs are the
    // tropical zero and never enumerated.
    AugmentedDigraph<AsymptoticScalar> augmented() const;

    // Dense double realization at a concrete eps. Sets *underflow when some
    // present entry rounds to zero.
    SquareMatrix<double> realize(double eps, bool* underflow = nullptr) const;

private:
    int n_;
    std::vector<Entry> entries_;
};

// Asymptotic characteristic coefficients: slot k holds the minimal total
// order over boundary-rooted forests with k+1 trees and the prefactor summed
// over the minimizers. Slot N is exactly (order 0, prefactor 1).
std::vector<AsymptoticScalar> tropical_char_poly(const ExponentialMarkovInput& input,
                                                 int threads = 0);

// Witness for one coefficient: how many forests attain the minimal order and
// one example, for report notes.
struct CoefficientWitness {
    int k = 0;
    AsymptoticScalar value;
    long long minimizer_count = 0;
    std::optional<Forest> example;
};
std::vector<CoefficientWitness> tropical_witnesses(const ExponentialMarkovInput& input);

struct NewtonPolygon {
    // Lower convex hull of the points (k, V_k) over finite coefficients,
    // vertices by ascending k.
    std::vector<std::pair<int, Rational>> hull;
    // Every finite point lies on the hull (the convex-chain case).
    bool convexity_ok = false;
};

NewtonPolygon newton_polygon(const std::vector<AsymptoticScalar>& coefficient_orders);

// One eigenvalue family per hull edge: eigenvalues of magnitude order
// exp(-exponent/eps), multiplicity = the edge's horizontal span.
struct HullSegment {
    Rational exponent;
    int multiplicity = 0;
};
std::vector<HullSegment> hull_segments(const NewtonPolygon& polygon);

// lambda_k ~ prefactor * exp(-exponent/eps), k = 1..N, sorted by exponent
// descending (slowest eigenvalue first).
struct EigenvalueAsymptotic {
    int k = 0;
    Rational exponent;
    double prefactor = 0.0;
};

// Simple-order case only: all coefficients tropically nonzero, convex chain,
// all slopes distinct. The prefactor follows the two-term dominant balance
// a_k lambda^k + a_{k-1} lambda^{k-1} ~ 0. Throws DegenerateSlopes otherwise;
// callers then fall back to hull_segments.
std::vector<EigenvalueAsymptotic> eigenvalue_asymptotics(
    const std::vector<AsymptoticScalar>& coefficient_orders, const NewtonPolygon& polygon);

struct AsymptoticSpectrum {
    std::vector<AsymptoticScalar> coefficient_orders;
    NewtonPolygon polygon;
    bool simple = false;
    std::vector<EigenvalueAsymptotic> eigenvalues;  // filled when simple
    std::vector<HullSegment> segments;
};

AsymptoticSpectrum analyze_spectrum(const ExponentialMarkovInput& input, int threads = 0);

// Negative real roots of a polynomial with positive, strongly graded
// coefficients (as the signless characteristic coefficients of a realized
// sub-generator are). Root k starts from the dominant balance -a_{k-1}/a_k
// and is Newton-refined; magnitudes come out ascending. This resolves roots
// far below the noise floor of a similarity-transform eigensolver because
// the coefficients carry full relative accuracy.
std::vector<double> graded_real_roots(const std::vector<double>& coeffs);

struct ValidationEntry {
    int k = 0;
    double exponent_predicted = 0.0;
    double prefactor_predicted = 0.0;
    double exponent_estimate = 0.0;
    double prefactor_estimate = 0.0;
    double exponent_rel_err = 0.0;
    double prefactor_rel_err = 0.0;
};

struct ValidationReport {
    std::vector<double> eps;  // descending
    std::vector<ValidationEntry> eigenvalues;
    bool underflow = false;
};

// Empirical check of the predicted asymptotics: realizes the input at each
// eps, recovers the finite-eps eigenvalues from signless characteristic
// coefficients, extrapolates -eps*ln|lambda(eps)| to eps -> 0 for the
// exponent and reads the prefactor off the smallest eps using the predicted
// exponent.
ValidationReport validate_asymptotics(const ExponentialMarkovInput& input,
                                      std::vector<double> eps_list, int threads = 0);

}  // namespace forest_spectra
