#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace vilenkin {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// p^k for any integer k (negative k gives 1/p^{-k}).
inline Rational rational_pow(int base, int exp) {
    Integer n = 1;
    for (int i = 0; i < (exp < 0 ? -exp : exp); ++i) n *= base;
    return exp >= 0 ? Rational(n) : Rational(1, n);
}

/// "num/den", or just "num" when the denominator is 1.
inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Accepts "a", "a/b" and decimal literals like "-0.25" (parsed exactly).
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("bad rational: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
    Integer num = 0, den = 1;
    bool any = false;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        num = num * 10 + (text[i] - '0');
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            num = num * 10 + (text[i] - '0');
            den *= 10;
            any = true;
        }
    } else if (i < text.size() && text[i] == '/') {
        ++i;
        Integer d = 0;
        bool dany = false;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            d = d * 10 + (text[i] - '0');
            dany = true;
        }
        if (!dany || d == 0) fail();
        den = d;
    }
    if (!any || i != text.size()) fail();
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

} // namespace vilenkin
