#pragma once

#include "hybrid/poly.hpp"

#include <stdexcept>
#include <utility>

namespace hybrid {

/// Rational function num/den over an exact field F, kept normalized:
/// gcd(num, den) = 1 and den monic. Forms a field itself, so the type
/// composes into towers like F(x)(y).
template <class F>
struct RatFn {
    Poly<F> num;
    Poly<F> den = Poly<F>(F(1L));

    RatFn() = default;
    RatFn(long n) : num(F(static_cast<long>(n))) {}
    explicit RatFn(F a) : num(std::move(a)) {}
    explicit RatFn(Poly<F> n) : num(std::move(n)) {}
    RatFn(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static RatFn variable() { return RatFn(Poly<F>::one_x()); }

    void normalize() {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num.is_zero()) {
            den = Poly<F>(F(1L));
            return;
        }
        if (den.is_constant()) {
            F di = inv(den.lead());
            num = num * di;
            den = Poly<F>(F(1L));
            return;
        }
        Poly<F> g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = divmod(num, g).first;
            den = divmod(den, g).first;
        }
        F li = inv(den.lead());
        num = num * li;
        den = den * li;
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    int num_degree() const { return num.degree(); }
    int den_degree() const { return den.degree(); }

    /// Constant value when is_constant(), else throws.
    F constant_value() const {
        if (!is_constant()) throw std::domain_error("rational function is not constant");
        return num.constant_term();
    }

    // Inputs are normalized, so when the two denominators are coprime the sum
    // over the common denominator is already reduced (any irreducible factor
    // of a.den would have to divide a.num or b.den) and no gcd is needed.
    friend RatFn add_impl(const RatFn& a, const RatFn& b, bool negate) {
        // Constant operands: normalized constants have den = 1, so the sum
        // with the other operand's denominator stays reduced and no gcd runs.
        if (a.is_constant() && b.is_constant()) {
            F cb = b.num.constant_term();
            return RatFn(negate ? a.num.constant_term() - cb : a.num.constant_term() + cb);
        }
        if (a.is_constant() || b.is_constant()) {
            const RatFn& full = a.is_constant() ? b : a;
            F ca = (a.is_constant() ? a : b).num.constant_term();
            RatFn r;
            r.den = full.den;
            if (&full == &b)
                r.num = (negate ? -full.num : full.num) + full.den * ca;
            else
                r.num = full.num + full.den * (negate ? -ca : ca);
            if (r.num.is_zero()) r.den = Poly<F>(F(1L));
            return r;
        }
        Poly<F> bn = negate ? -b.num : b.num;
        RatFn r;
        if (a.den.is_constant() || b.den.is_constant() ||
            poly_surely_coprime(a.den, b.den)) {
            // Coprime denominators: the sum over the product denominator is
            // already reduced, since any common factor would divide one
            // denominator and hence the other summand's numerator.
            r.num = a.num * b.den + bn * a.den;
            r.den = a.den * b.den;
        } else {
            // Shared factor g: use the lcm denominator.  Any cancellation in
            // the numerator must divide g, so reduction only ever runs gcds
            // against the small polynomial g instead of the full denominator.
            Poly<F> g = poly_gcd(a.den, b.den);
            Poly<F> bq = divmod(b.den, g).first;
            r.num = a.num * bq + bn * divmod(a.den, g).first;
            r.den = a.den * bq;
            Poly<F> h = poly_gcd(r.num, g);
            while (h.degree() > 0) {
                r.num = divmod(r.num, h).first;
                r.den = divmod(r.den, h).first;
                // Re-intersect with the denominator so a factor repeated in
                // the numerator is never divided out of the denominator more
                // often than it occurs there.
                h = poly_gcd(poly_gcd(r.num, h), r.den);
            }
        }
        if (r.num.is_zero()) {
            r.den = Poly<F>(F(1L));
        } else if (r.den.is_constant()) {
            F li = inv(r.den.lead());
            r.num = r.num * li;
            r.den = Poly<F>(F(1L));
        } else if (!poly_is_monic(r.den)) {
            F li = inv(r.den.lead());
            r.num = r.num * li;
            r.den = r.den * li;
        }
        return r;
    }
    friend RatFn operator+(const RatFn& a, const RatFn& b) { return add_impl(a, b, false); }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return add_impl(a, b, true); }
    friend RatFn operator-(const RatFn& a) {
        RatFn r = a;
        r.num = -r.num;
        return r;
    }
    // Cross-reduction: with both operands normalized, cancel a.num against
    // b.den and b.num against a.den; the remaining product is reduced.
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // Scaling by a constant preserves normalization (den stays monic).
        if (a.is_constant() || b.is_constant()) {
            const RatFn& full = a.is_constant() ? b : a;
            F c = (a.is_constant() ? a : b).num.constant_term();
            RatFn r;
            r.num = full.num * c;
            r.den = full.den;
            return r;
        }
        Poly<F> an = a.num, bd = b.den, bn = b.num, ad = a.den;
        if (!an.is_constant() && !bd.is_constant()) {
            Poly<F> g = poly_gcd(an, bd);
            if (g.degree() > 0) {
                an = divmod(an, g).first;
                bd = divmod(bd, g).first;
            }
        }
        if (!bn.is_constant() && !ad.is_constant()) {
            Poly<F> g = poly_gcd(bn, ad);
            if (g.degree() > 0) {
                bn = divmod(bn, g).first;
                ad = divmod(ad, g).first;
            }
        }
        RatFn r;
        r.num = an * bn;
        r.den = ad * bd;
        if (!r.den.is_constant() && poly_is_monic(r.den)) return r;
        F li = inv(r.den.lead());
        r.num = r.num * li;
        r.den = r.den.is_constant() ? Poly<F>(F(1L)) : r.den * li;
        return r;
    }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
};

template <class F>
RatFn<F> inv(const RatFn<F>& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero rational function");
    return RatFn<F>(a.den, a.num);
}

template <class F>
RatFn<F> operator/(const RatFn<F>& a, const RatFn<F>& b) {
    return a * inv(b);
}

template <class F>
RatFn<F> conj(const RatFn<F>& a) {
    RatFn<F> r;
    r.num = conj(a.num);
    r.den = conj(a.den);
    r.normalize();
    return r;
}

/// d/dx (num/den) by the quotient rule.
template <class F>
RatFn<F> derivative(const RatFn<F>& a) {
    return RatFn<F>(a.num.derivative() * a.den - a.num * a.den.derivative(), a.den * a.den);
}

template <class F>
struct ModpDepth<RatFn<F>> {
    static constexpr int value = ModpDepth<F>::value + 1;
};

/// Homomorphic image in GF(p^2): evaluates the tower variable of this level
/// at a salt-dependent residue.  Empty when some denominator vanishes mod p.
template <class F>
std::optional<Fp2> modp_image(const RatFn<F>& v, std::uint64_t salt) {
    Fp2 t{modp_var_residue(ModpDepth<F>::value, salt), 0};
    auto eval = [&](const Poly<F>& p) -> std::optional<Fp2> {
        Fp2 acc;
        for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
            auto ci = modp_image(*it, salt);
            if (!ci) return std::nullopt;
            acc = fp2_add(fp2_mul(acc, t), *ci);
        }
        return acc;
    };
    auto n = eval(v.num), d = eval(v.den);
    if (!n || !d || d->is_zero()) return std::nullopt;
    return fp2_mul(*n, fp2_inv(*d));
}

}  // namespace hybrid
