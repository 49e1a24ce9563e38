#pragma once

#include "hybrid/errors.hpp"
#include "hybrid/scalar.hpp"

#include <map>
#include <vector>

namespace hybrid {

/// Coefficient of one power of 1/z: an exact rational function of
/// L = ln z^2 over the symbolic scalar field.
using RatL = RatFn<Scalar>;

inline RatL ratl_scalar(const Scalar& s) { return RatL(s); }
inline RatL ratl_L() { return RatL::variable(); }

Complex50 eval_ratl(const RatL& c, const Complex50& l_v, const Complex50& gamma_v, const Complex50& pi_v);

/// Truncated pseudoasymptotic series  sum_{q=0..order_z} c_q(L) / z^q.
///
/// order_z is the validity contract: coefficients beyond it are unknown,
/// not zero, and every binary operation takes the minimum of the operand
/// orders. Values are immutable in spirit: all operations return new series.
struct PseudoSeries {
    int order_z = 0;
    std::map<int, RatL> coeffs;  // only nonzero coefficients are stored

    PseudoSeries() = default;
    explicit PseudoSeries(int order) : order_z(order) {}

    static PseudoSeries zero(int order) { return PseudoSeries(order); }
    static PseudoSeries constant(const Scalar& s, int order) {
        PseudoSeries p(order);
        p.set(0, ratl_scalar(s));
        return p;
    }
    /// s / z^q
    static PseudoSeries monomial(const Scalar& s, int q, int order) {
        PseudoSeries p(order);
        p.set(q, ratl_scalar(s));
        return p;
    }

    void set(int q, RatL c) {
        if (q < 0 || q > order_z) throw std::out_of_range("pseudoseries power out of range");
        if (c.is_zero())
            coeffs.erase(q);
        else
            coeffs[q] = std::move(c);
    }

    RatL coeff(int q) const {
        auto it = coeffs.find(q);
        return it == coeffs.end() ? RatL() : it->second;
    }

    bool is_zero() const { return coeffs.empty(); }

    friend bool operator==(const PseudoSeries& a, const PseudoSeries& b) {
        return a.order_z == b.order_z && a.coeffs == b.coeffs;
    }
};

PseudoSeries ps_add(const PseudoSeries& a, const PseudoSeries& b);
PseudoSeries ps_sub(const PseudoSeries& a, const PseudoSeries& b);
PseudoSeries ps_neg(const PseudoSeries& a);
PseudoSeries ps_mul(const PseudoSeries& a, const PseudoSeries& b);
PseudoSeries ps_scale(const PseudoSeries& a, const Scalar& s);
PseudoSeries ps_scale(const PseudoSeries& a, const RatL& c);

/// Multiplies by 1/z^k (k >= 0); the validity order grows by k.
PseudoSeries ps_shift(const PseudoSeries& a, int k);

/// Restricts to order <= new_order (which must not exceed order_z... it may
/// be lower or equal; a higher value would claim unknown accuracy).
PseudoSeries ps_truncate(const PseudoSeries& a, int new_order);

/// Multiplicative inverse up to the retained order; requires an invertible
/// head c_0. Factors out c_0 and applies the geometric series in 1/z.
PseudoSeries ps_reciprocal(const PseudoSeries& a);

/// Termwise d/dz with d/dz[c(L)/z^q] = (2 c'(L) - q c(L))/z^{q+1}.
PseudoSeries ps_dz(const PseudoSeries& a);

/// Termwise d/dz when the series variable is an affine image V = s*L + t of
/// L = ln z^2: d/dz[c(V)/z^q] = (2 s c'(V) - q c(V))/z^{q+1}.  The scalar
/// `chain` passed here is 2*s.  ps_dz(a) == ps_dz_var(a, 2).
PseudoSeries ps_dz_var(const PseudoSeries& a, const Scalar& chain);

/// Substitute the series variable: returns the series whose coefficients are
/// c_q(s*X + t), i.e. rewrites a series in variable V as a series in X where
/// V = s*X + t.  Used to convert between the internal variable
/// Lambda = (L + 2*gamma)/(4*pi) and the reported variable L.
RatL ratl_affine_sub(const RatL& c, const Scalar& s, const Scalar& t);
PseudoSeries ps_affine_sub(const PseudoSeries& a, const Scalar& s, const Scalar& t);

/// Numeric value at real z > 1 with the standard gamma and pi.
Complex50 ps_eval(const PseudoSeries& a, const Real50& z);

/// 1/L-expansion of one coefficient: c(L) = sum_l tail[l] / L^l + O(L^-(K+1)).
/// Defined only for deg(num) <= deg(den).
struct LTail {
    std::vector<Scalar> coeffs;  // index l = power of 1/L
    int order_L() const { return static_cast<int>(coeffs.size()) - 1; }
};

LTail ps_l_tail(const RatL& c, int order_l);

}  // namespace hybrid
