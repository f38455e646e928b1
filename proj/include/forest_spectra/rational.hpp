#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace forest_spectra {

// Exact arbitrary-precision rational. All "exact mode" arithmetic runs on
// this type; it is what makes the oracle-equivalence checks decisive.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p", "p/q", decimal literals ("1.25", "-3.5e-2"). Decimal input is
// converted exactly (1.25 -> 5/4). Throws ParseError on anything else.
Rational parse_rational(const std::string& text);

// "p" when the denominator is 1, "p/q" otherwise. parse_rational round-trips it.
std::string rational_to_string(const Rational& r);

double rational_to_double(const Rational& r);

}  // namespace forest_spectra
