#pragma once

#include "hybrid/engine.hpp"

#include <string>
#include <vector>

namespace hybrid {

/// Per-stage diagnostics of the inverse pipeline.
struct StageDiagnostics {
    std::string stage;       // geometry | lambda_seg | lambda_off | lambda_top
    std::string status;      // ok | skipped | warning text
    Real50 condition{0};     // condition number of the linear solve, if any
    Real50 residual{0};      // worst root/solve residual, if any
};

/// Everything the inverse pipeline recovers from an expansion.
/// euler_hybrid = sum_euler - N; lambda values are reported up to one global
/// permutation, fixed by the convention that lambda_seg is sorted ascending
/// and lambda_off_abs / lambda_top follow that order.
struct InverseReport {
    bool is_hybrid = false;
    Scalar sum_vol;          // exact: 4*pi*c_2
    Scalar sum_len;          // exact: 4*c_3
    int n_segments = 0;      // N/2
    long sum_euler = 0;      // 6*(lim c_4 - N/4)
    long euler_hybrid = 0;   // sum_euler - N
    std::vector<Real50> lambda_seg;      // sorted ascending
    std::vector<Real50> lambda_off_abs;  // |lambda_{i,i+N}|, matched order
    std::vector<Real50> lambda_top;      // lambda_{i,i}, matched order
    std::vector<StageDiagnostics> conditioning;
};

/// True iff some coefficient has genuine L-dependence.
bool detect_hybrid(const PseudoSeries& series);

/// Recovers the geometric invariants (exact rational arithmetic).
/// Throws MalformedSeries if c_2 or c_3 is L-dependent, the series is too
/// short, or the N / Euler data fail to be integers of the right parity.
InverseReport recover_geometry(const PseudoSeries& series);

/// Recovers the multiset {lambda_{i+N,i+N}} for a section-5-class series.
///
/// heat_data supplies the known heat coefficients (Theorem-bord hypothesis);
/// the pairing between its endpoints and the recovered (ascending) lambda
/// values is resolved internally from the 1/L^2 data, so the endpoint order
/// is free.  The coefficient -> power-sum map is
/// probed from the trace engine at runtime rather than transcribed from the
/// printed closed forms.
std::vector<Real50> recover_lambda_seg(const PseudoSeries& series, const HybridSpec& heat_data,
                                       StageDiagnostics* diag = nullptr);

/// Solves the 1/L linear system for y_i = |lambda_{i,i+N}|^2 and returns the
/// square roots, paired with lambda_seg's order.
std::vector<Real50> recover_lambda_off(const PseudoSeries& series, const HybridSpec& heat_data,
                                       const std::vector<Real50>& lambda_seg,
                                       StageDiagnostics* diag = nullptr);

/// Solves the 1/L^2 linear system for lambda_{i,i}, same pairing.
std::vector<Real50> recover_lambda_top(const PseudoSeries& series, const HybridSpec& heat_data,
                                       const std::vector<Real50>& lambda_seg,
                                       const std::vector<Real50>& lambda_off_abs,
                                       StageDiagnostics* diag = nullptr);

/// Full pipeline: geometry always; the three lambda stages when the series is
/// hybrid with N >= 1 (they are skipped, with a diagnostic, otherwise).
InverseReport invert(const PseudoSeries& series, const HybridSpec& heat_data);

}  // namespace hybrid
