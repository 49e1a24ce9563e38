#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hybrid {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "p/q", or a plain decimal like "-0.25".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in rational literal");
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg || (!digits.empty() && digits[0] == '+')) digits.erase(0, 1);
    if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + s);
    BigInt p(digits);
    BigInt q = 1;
    for (std::size_t i = 0; i < frac_len; ++i) q *= 10;
    Rational r(p, q);
    return neg ? -r : r;
}

}  // namespace hybrid
