#pragma once

#include "hybrid/gq.hpp"
#include "hybrid/numeric.hpp"
#include "hybrid/ratfn.hpp"

#include <optional>
#include <string>

namespace hybrid {

/// Exact scalar field of the whole engine: Gaussian rationals extended by
/// the two symbolic constants gamma (Euler's constant) and pi, i.e. the
/// fraction-field tower Q(i)(gamma)(pi). Numeric values are substituted
/// only at evaluation time.
using QGamma = RatFn<GQ>;     // rational functions in gamma over Q(i)
using Scalar = RatFn<QGamma>; // rational functions in pi over QGamma

inline Scalar scalar_from_gq(const GQ& a) { return Scalar(QGamma(a)); }
inline Scalar scalar_from_rational(const Rational& r) { return scalar_from_gq(GQ(r)); }
inline Scalar scalar_int(long n) { return Scalar(n); }
inline Scalar scalar_i() { return scalar_from_gq(GQ(Rational(0), Rational(1))); }
inline Scalar scalar_gamma() { return Scalar(QGamma::variable()); }
inline Scalar scalar_pi() { return Scalar::variable(); }

inline bool scalar_is_real(const Scalar& s) { return conj(s) == s; }

/// The scalar as a plain Gaussian rational, if it involves neither gamma nor pi.
std::optional<GQ> scalar_as_gq(const Scalar& s);

/// The scalar as a plain rational, if it is free of gamma, pi and i.
std::optional<Rational> scalar_as_rational(const Scalar& s);

Complex50 eval_gq(const GQ& a);
Complex50 eval_qgamma(const QGamma& a, const Complex50& gamma_v);
Complex50 eval_scalar(const Scalar& a, const Complex50& gamma_v, const Complex50& pi_v);

/// Evaluates with the standard numeric gamma and pi.
Complex50 eval_scalar(const Scalar& a);

/// Human-readable rendering, e.g. "(-1/4*pi^-1)*g + 2" style expressions.
std::string to_pretty(const Scalar& s);

/// Parses scalar config literals: a rational (or decimal) optionally
/// times a power of pi, e.g. "4", "-0.5", "2/3*pi", "4*pi^2", "pi".
Scalar parse_scalar_literal(const std::string& text);

}  // namespace hybrid
