#include "forest_spectra/rational.hpp"

#include "forest_spectra/errors.hpp"

#include <cctype>
#include <cstddef>

namespace forest_spectra {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

BigInt parse_integer(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw ParseError("sign without digits in '" + s + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("invalid integer literal '" + s + "'");
    return BigInt(s);
}

BigInt pow10(long e) {
    BigInt r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

// mantissa[.fraction][e exponent]
Rational parse_decimal(const std::string& s) {
    std::string body = s;
    long exponent = 0;
    std::size_t epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string etext = body.substr(epos + 1);
        if (etext.empty()) throw ParseError("missing exponent in '" + s + "'");
        try {
            exponent = std::stol(etext);
        } catch (const std::exception&) {
            throw ParseError("invalid exponent in '" + s + "'");
        }
        body = body.substr(0, epos);
    }

    std::string frac;
    std::size_t dot = body.find('.');
    if (dot != std::string::npos) {
        frac = body.substr(dot + 1);
        body = body.substr(0, dot);
    }
    if (body.empty() || body == "+" || body == "-") body += "0";
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("invalid fraction digits in '" + s + "'");

    bool negative = body[0] == '-';
    if (body[0] == '+' || body[0] == '-') body = body.substr(1);
    if (body.empty()) body = "0";
    BigInt digits = parse_integer(body);
    for (char c : frac) digits = digits * 10 + (c - '0');
    if (negative) digits = -digits;

    long shift = exponent - static_cast<long>(frac.size());
    Rational value(digits);
    if (shift > 0)
        value *= Rational(pow10(shift));
    else if (shift < 0)
        value /= Rational(pow10(-shift));
    return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw ParseError("empty numeric literal");

    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p = parse_integer(strip(s.substr(0, slash)));
        BigInt q = parse_integer(strip(s.substr(slash + 1)));
        if (q == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(p, q);
    }
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        return parse_decimal(s);
    return Rational(parse_integer(s));
}

std::string rational_to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rational_to_double(const Rational& r) {
    return r.template convert_to<double>();
}

}  // namespace forest_spectra
