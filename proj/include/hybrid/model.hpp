#pragma once

#include "hybrid/errors.hpp"
#include "hybrid/mat2.hpp"
#include "hybrid/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hybrid {

/// A gluing point on a manifold, carrying the local heat-kernel data a_n(q)
/// for n >= 1 (anything beyond the supplied list is zero).
struct GluingPointSpec {
    std::string label;
    std::vector<Scalar> local_heat;  // index 0 holds a_1(q), index 1 holds a_2(q), ...

    Scalar local_a(int n) const {
        if (n < 1 || n > static_cast<int>(local_heat.size())) return Scalar{};
        return local_heat[static_cast<std::size_t>(n - 1)];
    }
};

/// A closed two-dimensional manifold component.  a_0 = volume and
/// a_1 = 2*pi*chi/3 are derived; global_heat lists a_k for k >= 2 (anything
/// beyond the supplied list is zero).
struct ManifoldSpec {
    std::string name;
    Scalar volume;
    long euler_char = 0;
    std::vector<Scalar> global_heat;  // index 0 holds a_2, index 1 holds a_3, ...
    std::vector<GluingPointSpec> gluing_points;

    Scalar global_a(int k) const;
    int mu() const { return static_cast<int>(gluing_points.size()); }
};

struct SegmentSpec {
    std::string name;
    Scalar length;
};

/// Location of one manifold-side gluing point: manifold index and point index
/// within that manifold's gluing_points list.
struct PointRef {
    int manifold = -1;
    int point = -1;
    bool operator==(const PointRef& o) const { return manifold == o.manifold && point == o.point; }
};

/// endpoints[2k] is where the initial endpoint of segment k attaches and
/// endpoints[2k+1] where its terminal endpoint attaches; this is the paper's
/// enumeration q_{2k-1}, q_{2k} in 0-based form.
struct HybridSpec {
    std::vector<ManifoldSpec> manifolds;
    std::vector<SegmentSpec> segments;
    std::vector<PointRef> endpoints;

    int m() const { return static_cast<int>(manifolds.size()); }
    int n() const { return static_cast<int>(segments.size()); }
    int N() const { return 2 * n(); }
    int total_mu() const;
};

struct ValidationError {
    std::string code;  // CountMismatch | NotConnected | BadGluing | BadValue
    std::string message;
};

/// Checks all model invariants; an empty result means the spec is valid.
std::vector<ValidationError> validate(const HybridSpec& spec);

/// One boundary block (A_j, B_j) with optional canonical form Phi_j.
struct BCBlock {
    Mat2 A;
    Mat2 B;
    std::optional<Mat2> Phi;
};

struct BoundaryCondition {
    std::vector<BCBlock> blocks;

    int N() const { return static_cast<int>(blocks.size()); }
};

/// Per-block invariants: A B* Hermitian and det(A A* + B B*) != 0.
/// Throws NotSelfAdjoint on failure, naming the offending block.
void check_blocks(const BoundaryCondition& bc);

/// Fills Phi_j = -(A_j - iB_j)^{-1}(A_j + iB_j) per block, verifies unitarity
/// and that (1 - Phi_j, i(1 + Phi_j)) spans the same row space as (A_j, -B_j).
/// Throws NotSelfAdjoint when A_j - iB_j is singular or a verification fails.
BoundaryCondition canonicalize(const BoundaryCondition& bc);

/// True per block iff the canonical Phi_j is diagonal (absence of coupling).
/// Requires canonical forms; canonicalizes a copy when absent.
std::vector<bool> check_reducible(const BoundaryCondition& bc);

/// Throws Reducible if any block is reducible.
void require_non_reducible(const BoundaryCondition& bc);

/// N_0 = #{ j : a_{j,j+N} b_{j+N,j} - a_{j+N,j+N} b_{j,j} != 0 }.
int n_zero_count(const BoundaryCondition& bc);

/// The self-adjoint diagonal family of section 5: B = identity and
/// A_j Hermitian with entries (lambda_top, lambda_off; conj lambda_off, lambda_seg).
struct SelfAdjointDiagBC {
    struct Triple {
        Rational lambda_top;
        GQ lambda_off;
        Rational lambda_seg;
    };
    std::vector<Triple> points;

    /// Throws NotSelfAdjoint if some lambda_seg vanishes.
    BoundaryCondition to_boundary_condition() const;
};

}  // namespace hybrid
