#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hybrid/rational.hpp"

namespace hybrid {

/// 50-significant-digit binary float used by all numeric evaluation paths.
using Real50 = boost::multiprecision::cpp_bin_float_50;

struct Complex50 {
    Real50 re{0};
    Real50 im{0};

    Complex50() = default;
    Complex50(Real50 r) : re(std::move(r)) {}
    Complex50(Real50 r, Real50 i) : re(std::move(r)), im(std::move(i)) {}
    Complex50(long n) : re(n) {}

    friend Complex50 operator+(const Complex50& a, const Complex50& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex50 operator-(const Complex50& a, const Complex50& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex50 operator-(const Complex50& a) { return {-a.re, -a.im}; }
    friend Complex50 operator*(const Complex50& a, const Complex50& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex50 operator/(const Complex50& a, const Complex50& b) {
        Real50 n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex50& operator+=(const Complex50& o) { return *this = *this + o; }
    Complex50& operator-=(const Complex50& o) { return *this = *this - o; }
    Complex50& operator*=(const Complex50& o) { return *this = *this * o; }
};

inline Real50 abs(const Complex50& a) {
    using boost::multiprecision::sqrt;
    return sqrt(a.re * a.re + a.im * a.im);
}

inline Real50 to_real50(const Rational& r) {
    return Real50(numerator(r)) / Real50(denominator(r));
}

Real50 const_pi_50();
Real50 const_euler_gamma_50();

/// Exact conversion: every binary float is a dyadic rational.
Rational real50_to_rational(const Real50& x);

}  // namespace hybrid
