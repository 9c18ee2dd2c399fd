#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sosprep {

// Exact rational coefficient. Arbitrary precision, always in lowest terms
// with positive denominator (boost normalizes on construction).
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline int sign(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// "num/den" string, e.g. "-3/2", "5". Inverse of parse_rational for
// integers and reduced fractions.
inline std::string rational_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Base-10 integer parse. cpp_int's string constructor treats a leading
// zero as an octal prefix, so digits are validated and fed in explicitly.
inline BigInt parse_integer(const std::string& text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("empty integer literal");
    BigInt value = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw std::invalid_argument("bad digit in integer '" + text + "'");
        value = value * 10 + (text[pos] - '0');
    }
    return negative ? -value : value;
}

// Accepts INT, INT/INT, and DECIMAL forms. Decimals convert exactly:
// "0.5" -> 1/2, "1.25" -> 5/4.
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(parse_integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("trailing dot in '" + text + "'");
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rat(parse_integer(digits), den);
}

// Shortest decimal that round-trips through double; used only at export
// boundaries where exactness is deliberately given up.
inline std::string rational_to_decimal(const Rat& r) {
    double d = static_cast<double>(r);
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, d);
        if (std::strtod(buf, nullptr) == d) {
            std::string s(buf);
            if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
                s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
                s += ".0";
            return s;
        }
    }
    return std::to_string(d);
}

}  // namespace sosprep
