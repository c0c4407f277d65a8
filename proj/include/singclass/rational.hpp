#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace singclass {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

/// Largest integer <= r.
inline Int floor_int(const Rational& r) {
    Int n = numerator_of(r), d = denominator_of(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

/// Exact rendering, "n/d" in lowest terms, or plain "n" for integers.
inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator_of(r).str();
    if (!is_integer(r)) s += "/" + denominator_of(r).str();
    return s;
}

/// Approximate decimal rendering (display only, never used in computation).
inline std::string to_decimal_string(const Rational& r, int digits = 6) {
    Int n = numerator_of(r), d = denominator_of(r);
    bool neg = n < 0;
    if (neg) n = -n;
    Int whole = n / d, rem = n % d;
    std::string s = (neg ? "-" : "") + whole.str();
    if (digits > 0) {
        s += ".";
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            s += char('0' + int(rem / d));
            rem %= d;
        }
    }
    return s;
}

} // namespace singclass
