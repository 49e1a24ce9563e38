#include "hybrid/scalar.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

namespace hybrid {

Real50 const_pi_50() { return boost::math::constants::pi<Real50>(); }
Real50 const_euler_gamma_50() { return boost::math::constants::euler<Real50>(); }

Rational real50_to_rational(const Real50& x) {
    if (x == 0) return Rational(0);
    int e = 0;
    Real50 m = frexp(x, &e);  // x = m * 2^e, 1/2 <= |m| < 1
    // Shift the full mantissa out into an integer.
    constexpr int kBits = 180;  // > 50 digits of precision
    m = ldexp(m, kBits);
    BigInt mi = m.convert_to<BigInt>();
    e -= kBits;
    Rational r(mi);
    if (e >= 0) {
        BigInt p = BigInt(1) << e;
        return r * Rational(p);
    }
    BigInt q = BigInt(1) << (-e);
    return r / Rational(q);
}

namespace {

template <class F, class Ev>
Complex50 eval_poly_at(const Poly<F>& p, const Complex50& x, Ev ev) {
    Complex50 acc;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + ev(*it);
    return acc;
}

}  // namespace

Complex50 eval_gq(const GQ& a) { return {to_real50(a.re), to_real50(a.im)}; }

Complex50 eval_qgamma(const QGamma& a, const Complex50& gamma_v) {
    Complex50 n = eval_poly_at(a.num, gamma_v, [](const GQ& c) { return eval_gq(c); });
    Complex50 d = eval_poly_at(a.den, gamma_v, [](const GQ& c) { return eval_gq(c); });
    return n / d;
}

Complex50 eval_scalar(const Scalar& a, const Complex50& gamma_v, const Complex50& pi_v) {
    auto ev = [&](const QGamma& c) { return eval_qgamma(c, gamma_v); };
    Complex50 n = eval_poly_at(a.num, pi_v, ev);
    Complex50 d = eval_poly_at(a.den, pi_v, ev);
    return n / d;
}

Complex50 eval_scalar(const Scalar& a) {
    return eval_scalar(a, Complex50(const_euler_gamma_50()), Complex50(const_pi_50()));
}

std::optional<GQ> scalar_as_gq(const Scalar& s) {
    if (!s.is_constant()) return std::nullopt;
    QGamma q = s.constant_value();
    if (!q.is_constant()) return std::nullopt;
    return q.constant_value();
}

std::optional<Rational> scalar_as_rational(const Scalar& s) {
    auto g = scalar_as_gq(s);
    if (!g || g->im != 0) return std::nullopt;
    return g->re;
}

namespace {

std::string gq_factor(const GQ& c) {
    std::string s = to_string(c);
    if (c.im != 0) return "(" + s + ")";
    if (!s.empty() && s[0] == '-') return "(" + s + ")";
    return s;
}

std::string poly_pretty_gq(const Poly<GQ>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const GQ& c = p.c[k];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (k == 0) {
            out += gq_factor(c);
        } else {
            if (!(c == GQ(1L))) out += gq_factor(c) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::string qgamma_pretty(const QGamma& q) {
    std::string n = poly_pretty_gq(q.num, "g");
    if (q.den.is_constant()) return n;
    return "(" + n + ")/(" + poly_pretty_gq(q.den, "g") + ")";
}

std::string poly_pretty_scalar(const Poly<QGamma>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const QGamma& c = p.c[k];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = qgamma_pretty(c);
        if (k == 0) {
            out += "(" + cs + ")";
        } else {
            if (!(c == QGamma(1L))) out += "(" + cs + ")*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace

std::string to_pretty(const Scalar& s) {
    std::string n = poly_pretty_scalar(s.num, "pi");
    if (s.den.is_constant()) return n;
    return "(" + n + ")/(" + poly_pretty_scalar(s.den, "pi") + ")";
}

Scalar parse_scalar_literal(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw std::invalid_argument("empty scalar literal");
    Rational coef(1);
    int pi_pow = 0;
    auto pi_pos = t.find("pi");
    if (pi_pos == std::string::npos) {
        coef = parse_rational(t);
    } else {
        std::string head = t.substr(0, pi_pos);
        if (!head.empty() && head.back() == '*') head.pop_back();
        if (head == "-")
            coef = -1;
        else if (!head.empty())
            coef = parse_rational(head);
        std::string tail = t.substr(pi_pos + 2);
        pi_pow = 1;
        if (!tail.empty()) {
            if (tail[0] != '^') throw std::invalid_argument("bad scalar literal: " + text);
            pi_pow = std::stoi(tail.substr(1));
        }
    }
    Scalar s = scalar_from_rational(coef);
    Scalar p = scalar_pi();
    for (int k = 0; k < pi_pow; ++k) s *= p;
    for (int k = 0; k > pi_pow; --k) s = s / p;
    return s;
}

}  // namespace hybrid
