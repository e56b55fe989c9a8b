#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bfr {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational frac(long long num, long long den = 1) { return Rational(num) / Rational(den); }

inline BigInt floor_q(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0) --f;
    return f;
}

inline BigInt ceil_q(const Rational& q) {
    BigInt f = floor_q(q);
    return Rational(f) == q ? f : f + 1;
}

// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
    auto d = boost::multiprecision::denominator(q);
    if (d == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + d.str();
}

// Fixed-point decimal rendering with `digits` places, locale independent.
std::string to_decimal(const Rational& q, int digits = 6);

}  // namespace bfr
