#pragma once

#include "hybrid/fp2.hpp"
#include "hybrid/rational.hpp"

#include <stdexcept>
#include <string>

namespace hybrid {

/// Gaussian rational: complex number with exact rational real/imaginary parts.
struct GQ {
    Rational re{0};
    Rational im{0};

    GQ() = default;
    GQ(Rational r) : re(std::move(r)) {}
    GQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GQ(long n) : re(n) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GQ operator+(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GQ operator-(const GQ& a, const GQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GQ operator-(const GQ& a) { return {-a.re, -a.im}; }
    friend GQ operator*(const GQ& a, const GQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    GQ& operator+=(const GQ& o) { return *this = *this + o; }
    GQ& operator-=(const GQ& o) { return *this = *this - o; }
    GQ& operator*=(const GQ& o) { return *this = *this * o; }
};

inline GQ conj(const GQ& a) { return {a.re, -a.im}; }

/// |a|^2 as an exact rational.
inline Rational norm_sq(const GQ& a) { return a.re * a.re + a.im * a.im; }

inline GQ inv(const GQ& a) {
    Rational n = norm_sq(a);
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return {a.re / n, -a.im / n};
}

inline GQ operator/(const GQ& a, const GQ& b) { return a * inv(b); }

inline std::string to_string(const GQ& a) {
    if (a.im == 0) return to_string(a.re);
    std::string s = to_string(a.re);
    s += (a.im < 0) ? "-" : "+";
    Rational ai = abs(a.im);
    if (ai != 1) s += to_string(ai) + "*";
    s += "i";
    return s;
}

/// Parses "a", "a+b*i", "b*i", "i", "-i"; rational parts as in parse_rational.
inline GQ parse_gq(std::string s) {
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    s = t;
    // Split at the last top-level '+'/'-' that is not a leading sign or part of "e" exponent.
    auto strip_i = [](std::string u) -> std::optional<Rational> {
        if (u.empty() || u.back() != 'i') return std::nullopt;
        u.pop_back();
        if (!u.empty() && u.back() == '*') u.pop_back();
        if (u.empty() || u == "+") return Rational(1);
        if (u == "-") return Rational(-1);
        if (u.front() == '+') u.erase(0, 1);
        return parse_rational(u);
    };
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if (s[pos] == '+' || s[pos] == '-') {
            std::string a = s.substr(0, pos);
            std::string b = s.substr(pos);
            if (auto im = strip_i(b)) return GQ(parse_rational(a), *im);
            break;
        }
    }
    if (auto im = strip_i(s)) return GQ(Rational(0), *im);
    return GQ(parse_rational(s));
}

template <>
struct ModpDepth<GQ> {
    static constexpr int value = 0;
};

inline std::optional<std::uint64_t> modp_rational(const Rational& r) {
    BigInt dd = denominator(r) % kGcdPrime;
    std::uint64_t d = dd.convert_to<std::uint64_t>();
    if (d == 0) return std::nullopt;
    BigInt nm = numerator(r) % kGcdPrime;
    long long v = nm.convert_to<long long>();
    if (v < 0) v += static_cast<long long>(kGcdPrime);
    return fp_mul(static_cast<std::uint64_t>(v), fp_inv(d));
}

inline std::optional<Fp2> modp_image(const GQ& a, std::uint64_t) {
    auto re = modp_rational(a.re);
    auto im = modp_rational(a.im);
    if (!re || !im) return std::nullopt;
    return Fp2{*re, *im};
}

}  // namespace hybrid
