#include "bfr/rational.hpp"

namespace bfr {

std::string to_decimal(const Rational& q, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational x = q < 0 ? Rational(-q) : q;
    // round half up on the magnitude
    BigInt v = floor_q(x * Rational(scale) + Rational(1, 2));
    BigInt whole = v / scale, part = v % scale;
    std::string s = (q < 0 && v != 0 ? "-" : "") + whole.str();
    if (digits > 0) {
        std::string f = part.str();
        s += "." + std::string(digits - f.size(), '0') + f;
    }
    return s;
}

}  // namespace bfr
