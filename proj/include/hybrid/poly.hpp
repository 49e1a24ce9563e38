#pragma once

#include "hybrid/fp2.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hybrid {

/// Dense univariate polynomial over an exact field F.
///
/// F must provide: default construction (zero), operators + - * ,
/// is_zero(), operator==, and a free inv(F). The coefficient vector is
/// kept trimmed, so the zero polynomial has an empty vector.
template <class F>
struct Poly {
    std::vector<F> c;  // c[k] is the coefficient of x^k

    Poly() = default;
    explicit Poly(F a) {
        if (!a.is_zero()) c.push_back(std::move(a));
    }
    explicit Poly(std::vector<F> v) : c(std::move(v)) { trim(); }

    static Poly one_x() {  // the variable x itself; requires F to build 1 from long
        Poly p;
        p.c = {F(0L), F(1L)};
        return p;
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c.size()) - 1; }

    const F& lead() const {
        if (c.empty()) throw std::domain_error("lead() of zero polynomial");
        return c.back();
    }

    bool is_constant() const { return c.size() <= 1; }

    F constant_term() const { return c.empty() ? F() : c.front(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] += a.c[i];
            if (i < b.c.size()) r.c[i] += b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, F());
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const F& s) {
        Poly r = a;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly derivative() const {
        Poly r;
        for (std::size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * F(static_cast<long>(k)));
        r.trim();
        return r;
    }
};

/// Quotient and remainder of a by b (b nonzero).
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly<F> q, r = a;
    F lead_inv = inv(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        F coef = r.lead() * lead_inv;
        if (q.c.size() < static_cast<std::size_t>(shift) + 1) q.c.resize(shift + 1, F());
        q.c[shift] += coef;
        // r -= coef * x^shift * b
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= coef * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class F>
bool poly_is_monic(const Poly<F>& p) {
    return !p.is_zero() && p.lead() == F(1L);
}

template <class F>
Poly<F> make_monic(Poly<F> p) {
    if (p.is_zero()) return p;
    F li = inv(p.lead());
    for (auto& x : p.c) x *= li;
    return p;
}

/// Certifies gcd(a, b) = 1 via homomorphic images in GF(p^2).  Sound by the
/// subresultant argument: when every coefficient of a and b has an image and
/// both leading images are nonzero, the modular gcd degree can only be an
/// overestimate, so a degree-0 modular gcd proves exact coprimality.  Returns
/// false (meaning "unknown") whenever the certificate does not apply.
template <class F>
bool poly_surely_coprime(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return false;
    for (std::uint64_t salt : {0x51ed270b1ull, 0x8f14ab32dull}) {
        auto map = [&](const Poly<F>& p, std::vector<Fp2>& out) {
            out.clear();
            out.reserve(p.c.size());
            for (const auto& x : p.c) {
                auto im = modp_image(x, salt);
                if (!im) return false;
                out.push_back(*im);
            }
            return true;
        };
        std::vector<Fp2> u, v;
        if (!map(a, u) || !map(b, v)) continue;
        if (u.back().is_zero() || v.back().is_zero()) continue;
        while (!v.empty()) {
            if (v.size() == 1) return true;  // nonzero constant: gcd mod p is 1
            // u mod v, in place
            Fp2 li = fp2_inv(v.back());
            while (u.size() >= v.size()) {
                Fp2 f = fp2_mul(u.back(), li);
                std::size_t off = u.size() - v.size();
                for (std::size_t i = 0; i + 1 < v.size(); ++i)
                    u[off + i] = fp2_sub(u[off + i], fp2_mul(f, v[i]));
                u.pop_back();
                while (!u.empty() && u.back().is_zero()) u.pop_back();
            }
            std::swap(u, v);
        }
    }
    return false;
}

/// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.  Coprime inputs are
/// dispatched quickly through the modular certificate above.
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    if (!a.is_zero() && !b.is_zero()) {
        if (a.is_constant() || b.is_constant()) return Poly<F>(F(1L));
        if (poly_surely_coprime(a, b)) return Poly<F>(F(1L));
    }
    a = make_monic(std::move(a));
    b = make_monic(std::move(b));
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = make_monic(std::move(r));
    }
    return a;
}

template <class F>
Poly<F> conj(const Poly<F>& p) {
    Poly<F> r = p;
    for (auto& x : r.c) x = conj(x);
    return r;
}

}  // namespace hybrid
