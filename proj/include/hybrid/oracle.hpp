#pragma once

#include "hybrid/engine.hpp"

#include <array>

namespace hybrid {

/// Independent high-precision evaluation of the pre-expansion trace formula
/// at finite z: truncated F expansions, exact coth-based segment Green
/// functions, explicit derivative formulas, direct complex arithmetic for the
/// per-point X/U/V/W quantities, and Gauss-Legendre quadrature of the segment
/// integral.  No pseudoseries machinery is involved, so agreement with
/// ps_eval(assemble_trace(...)) is a genuine cross-check.
///
/// f_order bounds both the manifold trace partial sums (k <= f_order) and the
/// local F expansions (n <= f_order).
Real50 eval_thexpan(const HybridSpec& hybrid, const BoundaryCondition& bc, const Real50& z,
                    int f_order);

/// Quadrature of -G'_z(x,x,z)/(2z) over one segment of length l (the exact
/// Neumann Green function on the diagonal); the series engine represents the
/// same quantity as l/(4z^3) + 1/(2z^4) up to exponentially small terms.
Real50 segment_trace_quadrature(const Real50& l, const Real50& z);

/// First and second z-derivatives of the continuous part F of the diagonal
/// Green function of a flat torus with period lattice spanned by v1 and v2,
/// computed from the periodized free Green function as a lattice sum of
/// modified Bessel kernels.  The expansion predicts F' = -1/(2 pi z) and
/// F'' = 1/(2 pi z^2) up to exponentially small corrections (constant offsets
/// cancel in derivatives, which is why only derivatives are exposed).
///
/// cutoff bounds the lattice indices; throws CutoffTooSmall when the
/// neglected tail cannot be certified below 1e-14.
struct TorusFDerivatives {
    Real50 f_prime;
    Real50 f_second;
};

TorusFDerivatives torus_F_derivative(const std::array<Real50, 2>& v1,
                                     const std::array<Real50, 2>& v2, const Real50& z,
                                     int cutoff);

}  // namespace hybrid
