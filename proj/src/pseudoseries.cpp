#include "hybrid/pseudoseries.hpp"

#include <algorithm>

namespace hybrid {

Complex50 eval_ratl(const RatL& c, const Complex50& l_v, const Complex50& gamma_v, const Complex50& pi_v) {
    auto eval_poly = [&](const Poly<Scalar>& p) {
        Complex50 acc;
        for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
            acc = acc * l_v + eval_scalar(*it, gamma_v, pi_v);
        return acc;
    };
    Complex50 d = eval_poly(c.den);
    if (abs(d) < Real50("1e-40")) throw PoleAtL("coefficient denominator vanishes at L");
    return eval_poly(c.num) / d;
}

PseudoSeries ps_add(const PseudoSeries& a, const PseudoSeries& b) {
    PseudoSeries r(std::min(a.order_z, b.order_z));
    for (const auto& [q, c] : a.coeffs)
        if (q <= r.order_z) r.coeffs[q] = c;
    for (const auto& [q, c] : b.coeffs) {
        if (q > r.order_z) continue;
        auto it = r.coeffs.find(q);
        if (it == r.coeffs.end())
            r.coeffs[q] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) r.coeffs.erase(it);
        }
    }
    return r;
}

PseudoSeries ps_neg(const PseudoSeries& a) {
    PseudoSeries r = a;
    for (auto& [q, c] : r.coeffs) c = -c;
    return r;
}

PseudoSeries ps_sub(const PseudoSeries& a, const PseudoSeries& b) { return ps_add(a, ps_neg(b)); }

PseudoSeries ps_mul(const PseudoSeries& a, const PseudoSeries& b) {
    PseudoSeries r(std::min(a.order_z, b.order_z));
    for (const auto& [qa, ca] : a.coeffs) {
        if (qa > r.order_z) continue;
        for (const auto& [qb, cb] : b.coeffs) {
            int q = qa + qb;
            if (q > r.order_z) break;  // map iteration is ascending in qb
            auto it = r.coeffs.find(q);
            if (it == r.coeffs.end())
                r.coeffs[q] = ca * cb;
            else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.coeffs.erase(it);
            }
        }
    }
    return r;
}

PseudoSeries ps_scale(const PseudoSeries& a, const Scalar& s) { return ps_scale(a, ratl_scalar(s)); }

PseudoSeries ps_scale(const PseudoSeries& a, const RatL& c) {
    PseudoSeries r(a.order_z);
    if (c.is_zero()) return r;
    for (const auto& [q, cq] : a.coeffs) r.coeffs[q] = cq * c;
    return r;
}

PseudoSeries ps_shift(const PseudoSeries& a, int k) {
    PseudoSeries r(a.order_z + k);
    for (const auto& [q, c] : a.coeffs) r.coeffs[q + k] = c;
    return r;
}

PseudoSeries ps_truncate(const PseudoSeries& a, int new_order) {
    PseudoSeries r(std::min(a.order_z, new_order));
    for (const auto& [q, c] : a.coeffs)
        if (q <= r.order_z) r.coeffs[q] = c;
    return r;
}

PseudoSeries ps_reciprocal(const PseudoSeries& a) {
    RatL head = a.coeff(0);
    if (head.is_zero()) throw ZeroLeadingCoefficient("ps_reciprocal: zero leading coefficient");
    RatL head_inv = inv(head);
    int order = a.order_z;
    PseudoSeries r(order);
    // b_0 = 1/c_0, b_q = -(1/c_0) sum_{k=1..q} a_k b_{q-k}
    r.coeffs[0] = head_inv;
    for (int q = 1; q <= order; ++q) {
        RatL acc;
        for (int k = 1; k <= q; ++k) {
            auto ia = a.coeffs.find(k);
            if (ia == a.coeffs.end()) continue;
            auto ib = r.coeffs.find(q - k);
            if (ib == r.coeffs.end()) continue;
            acc += ia->second * ib->second;
        }
        if (!acc.is_zero()) {
            RatL b = -(head_inv * acc);
            if (!b.is_zero()) r.coeffs[q] = std::move(b);
        }
    }
    return r;
}

PseudoSeries ps_dz_var(const PseudoSeries& a, const Scalar& chain) {
    PseudoSeries r(a.order_z + 1);
    RatL ch = ratl_scalar(chain);
    for (const auto& [q, c] : a.coeffs) {
        RatL d = ch * derivative(c) - c * ratl_scalar(scalar_int(q));
        if (!d.is_zero()) r.coeffs[q + 1] = std::move(d);
    }
    return r;
}

PseudoSeries ps_dz(const PseudoSeries& a) { return ps_dz_var(a, scalar_int(2)); }

RatL ratl_affine_sub(const RatL& c, const Scalar& s, const Scalar& t) {
    // Horner evaluation of numerator and denominator at s*X + t in RatL.
    RatL x = ratl_L() * ratl_scalar(s) + ratl_scalar(t);
    auto eval_poly = [&](const Poly<Scalar>& p) {
        RatL acc;
        for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
            acc = acc * x + ratl_scalar(*it);
        return acc;
    };
    return eval_poly(c.num) / eval_poly(c.den);
}

PseudoSeries ps_affine_sub(const PseudoSeries& a, const Scalar& s, const Scalar& t) {
    PseudoSeries r(a.order_z);
    for (const auto& [q, c] : a.coeffs) {
        RatL d = ratl_affine_sub(c, s, t);
        if (!d.is_zero()) r.coeffs[q] = std::move(d);
    }
    return r;
}

Complex50 ps_eval(const PseudoSeries& a, const Real50& z) {
    if (z <= 1) throw std::domain_error("ps_eval requires z > 1");
    Complex50 gamma_v(const_euler_gamma_50());
    Complex50 pi_v(const_pi_50());
    Complex50 l_v(log(z * z));
    Complex50 acc;
    Real50 zp = 1;
    int last_q = 0;
    for (const auto& [q, c] : a.coeffs) {
        for (; last_q < q; ++last_q) zp *= z;
        acc += eval_ratl(c, l_v, gamma_v, pi_v) / Complex50(zp);
    }
    return acc;
}

LTail ps_l_tail(const RatL& c, int order_l) {
    LTail tail;
    tail.coeffs.assign(order_l + 1, Scalar());
    if (c.is_zero()) return tail;
    int dp = c.num.degree(), dq = c.den.degree();
    if (dp > dq) throw DegreeTooLarge("ps_l_tail: numerator degree exceeds denominator degree");
    // Substitute L = 1/t: c = t^{dq-dp} * P*(t)/Q*(t) with reversed coefficients;
    // Q*(0) = lead(Q) != 0, so the quotient is a Taylor series in t.
    auto reversed = [](const Poly<Scalar>& p, int deg) {
        std::vector<Scalar> v(deg + 1, Scalar());
        for (int k = 0; k <= p.degree(); ++k) v[deg - k] = p.c[k];
        return v;
    };
    std::vector<Scalar> ps = reversed(c.num, dp);
    std::vector<Scalar> qs = reversed(c.den, dq);
    int shift = dq - dp;
    Scalar q0_inv = inv(qs[0]);
    // Taylor coefficients of P*/Q* by series division.
    std::vector<Scalar> t(order_l + 1, Scalar());
    for (int n = 0; n <= order_l; ++n) {
        Scalar acc = n < static_cast<int>(ps.size()) ? ps[n] : Scalar();
        for (int k = 1; k <= n && k < static_cast<int>(qs.size()); ++k) acc -= qs[k] * t[n - k];
        t[n] = q0_inv * acc;
    }
    for (int n = 0; n + shift <= order_l; ++n) tail.coeffs[n + shift] = t[n];
    return tail;
}

}  // namespace hybrid
