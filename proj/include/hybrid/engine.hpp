#pragma once

#include "hybrid/model.hpp"
#include "hybrid/pseudoseries.hpp"

namespace hybrid {

/// The engine computes internally in the series variable
/// Lambda = (L + 2*gamma)/(4*pi), so the flat part of F is exactly -Lambda
/// and gamma enters coefficients only through the variable; results are
/// converted back to the L-representation at output.
Scalar lambda_chain_factor();                       // z * dLambda/dz = 1/(2*pi)
PseudoSeries lambda_to_L(const PseudoSeries& a);    // substitutes Lambda = (L + 2*gamma)/(4*pi)

/// F_i at a gluing point, in the Lambda variable:
/// -Lambda + sum_{n>=1} Gamma(n) a_n(q) / (4*pi*z^{2n}), truncated at `order`.
PseudoSeries manifold_F_series(const GluingPointSpec& point, int order);

/// G_i = 1/z up to exponentially small terms.
PseudoSeries segment_G_series(int order);

/// coth(z*l)/z, the exact diagonal segment Green value at an endpoint.
Real50 segment_G_exact(const Real50& l, const Real50& z);

/// l/(4 z^3) + 1/(2 z^4).
PseudoSeries segment_trace_base(const Scalar& length, int order);

/// sum_k a_k Gamma(k+1) / (4*pi*z^{2k+2}).
PseudoSeries manifold_trace_base(const ManifoldSpec& manifold, int order);

struct PointData {
    PseudoSeries F, G, X, U, V;
    GQ W;       // a_{i,i+N} b_{i+N,i+N} - a_{i+N,i+N} b_{i,i+N}
    GQ W_conj;  // a_{i+N,i} b_{i,i}     - a_{i,i}     b_{i+N,i}
                // For self-adjoint blocks W_conj = conj(W), so the product
                // W * W_conj reduces to the paper's |W|^2; the product form is
                // the one invariant under block scaling (both factors acquire
                // det L, matching X^2).
};

/// X, U, V, W of the 2x2-block Frobenius inversion for one boundary block.
PointData point_xuvw(const BCBlock& block, const PseudoSeries& F, const PseudoSeries& G);

struct ExpansionResult {
    PseudoSeries series;  // coefficients as rational functions of L
    int n_zero = 0;
    int order = 0;
    int num_points = 0;       // N
    Scalar sum_vol;           // sum of manifold volumes
    Scalar sum_len;           // sum of segment lengths
    long sum_euler = 0;       // sum of Euler characteristics
};

/// Full assembly of the Tr R^2 expansion: manifold and segment base terms
/// plus the per-point boundary corrections.  Per-point work is parallelized
/// with OpenMP unless `parallel` is false; the reduction order is fixed, so
/// both paths produce identical output.
ExpansionResult assemble_trace(const HybridSpec& hybrid, const BoundaryCondition& bc, int order,
                               bool parallel = true);

/// The per-point correction series (in Lambda), exposed for testing and for
/// the serial/parallel benchmark.
PseudoSeries point_trace_term(const PointData& data, int order);

}  // namespace hybrid
