#pragma once

#include "forest_spectra/rational.hpp"

namespace forest_spectra {

// The forest sums are generic over a commutative-ring scalar. A scalar type
// provides zero/one/is_zero through this trait; +, *, unary - come from
// operators. Division is only required where a caller actually divides
// (eigenvector components), so the asymptotic scalar can omit it.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct scalar_traits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
};

template <class S>
S scalar_zero() {
    return scalar_traits<S>::zero();
}

template <class S>
S scalar_one() {
    return scalar_traits<S>::one();
}

template <class S>
bool is_zero(const S& v) {
    return scalar_traits<S>::is_zero(v);
}

}  // namespace forest_spectra
