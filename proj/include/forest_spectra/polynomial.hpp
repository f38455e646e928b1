#pragma once

#include "forest_spectra/scalar.hpp"

#include <utility>
#include <vector>

namespace forest_spectra {

// Dense univariate polynomial, coefficients ascending in power. Length is
// meaningful: characteristic polynomials keep all N+1 slots even when high
// coefficients vanish. Ring operations are provided so a polynomial can
// itself serve as a scalar (the permutation-expansion oracle evaluates
// determinants of matrices of degree-1 polynomials).
template <class S>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) {}

    static Polynomial constant(S v) { return Polynomial(std::vector<S>{std::move(v)}); }

    const std::vector<S>& coefficients() const { return c_; }
    int length() const { return static_cast<int>(c_.size()); }

    // Formal degree ignoring trailing zeros; -1 for the zero polynomial.
    int degree() const {
        for (int k = length() - 1; k >= 0; --k)
            if (!is_zero(c_[k])) return k;
        return -1;
    }

    const S& operator[](int k) const { return c_[k]; }
    S& operator[](int k) { return c_[k]; }

    // Coefficient with zero-padding beyond the stored length.
    S coeff(int k) const {
        if (k < 0 || k >= length()) return scalar_zero<S>();
        return c_[k];
    }

    bool zero_poly() const { return degree() < 0; }

    // Horner evaluation at a point of any type the coefficients convert to
    // (Rational at Rational, double at double or complex<double>).
    template <class X>
    X evaluate(const X& x) const {
        X acc = X(0);
        for (int k = length() - 1; k >= 0; --k) acc = acc * x + static_cast<X>(c_[k]);
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> r(std::max(a.c_.size(), b.c_.size()), scalar_zero<S>());
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k < a.c_.size()) r[k] = r[k] + a.c_[k];
            if (k < b.c_.size()) r[k] = r[k] + b.c_[k];
        }
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.c_.empty() || b.c_.empty()) return Polynomial();
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, scalar_zero<S>());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& a) {
        std::vector<S> r = a.c_;
        for (S& v : r) v = -v;
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    // Equality of the represented polynomials, not of the stored lengths.
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!(a.coeff(static_cast<int>(k)) == b.coeff(static_cast<int>(k)))) return false;
        return true;
    }

private:
    std::vector<S> c_;
};

template <class S>
struct scalar_traits<Polynomial<S>> {
    static Polynomial<S> zero() { return Polynomial<S>(); }
    static Polynomial<S> one() { return Polynomial<S>::constant(scalar_one<S>()); }
    static bool is_zero(const Polynomial<S>& p) { return p.zero_poly(); }
};

}  // namespace forest_spectra
