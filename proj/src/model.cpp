#include "hybrid/model.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

namespace hybrid {

Scalar ManifoldSpec::global_a(int k) const {
    if (k == 0) return volume;
    if (k == 1) return scalar_from_rational(Rational(2 * euler_char, 3)) * scalar_pi();
    int idx = k - 2;
    if (idx < 0 || idx >= static_cast<int>(global_heat.size())) return Scalar{};
    return global_heat[static_cast<std::size_t>(idx)];
}

int HybridSpec::total_mu() const {
    int s = 0;
    for (const auto& mfd : manifolds) s += mfd.mu();
    return s;
}

namespace {

bool is_positive_real(const Scalar& s) {
    if (!scalar_is_real(s)) return false;
    Complex50 v = eval_scalar(s);
    return v.re > 0;
}

}  // namespace

std::vector<ValidationError> validate(const HybridSpec& spec) {
    std::vector<ValidationError> errs;
    auto err = [&](std::string code, std::string msg) {
        errs.push_back({std::move(code), std::move(msg)});
    };

    if (spec.manifolds.empty()) err("BadValue", "hybrid has no manifolds");
    for (int i = 0; i < spec.m(); ++i) {
        const auto& mfd = spec.manifolds[static_cast<std::size_t>(i)];
        if (!is_positive_real(mfd.volume))
            err("BadValue", "manifold " + std::to_string(i) + " volume is not a positive real");
        // A plain closed manifold (no segments at all) is the degenerate
        // smooth case and carries no gluing points.
        if (mfd.mu() < 1 && spec.n() > 0)
            err("CountMismatch", "manifold " + std::to_string(i) + " has no gluing points");
        for (const auto& h : mfd.global_heat)
            if (!scalar_is_real(h))
                err("BadValue", "manifold " + std::to_string(i) + " has a non-real heat coefficient");
    }
    for (int j = 0; j < spec.n(); ++j)
        if (!is_positive_real(spec.segments[static_cast<std::size_t>(j)].length))
            err("BadValue", "segment " + std::to_string(j) + " length is not a positive real");

    if (spec.total_mu() != spec.N())
        err("CountMismatch", "sum of gluing-point counts is " + std::to_string(spec.total_mu()) +
                                 " but 2n = " + std::to_string(spec.N()));

    if (static_cast<int>(spec.endpoints.size()) != spec.N()) {
        err("BadGluing", "gluing lists " + std::to_string(spec.endpoints.size()) +
                             " endpoints but 2n = " + std::to_string(spec.N()));
        return errs;  // endpoint-indexed checks below would be meaningless
    }

    std::set<std::pair<int, int>> used;
    bool refs_ok = true;
    for (int j = 0; j < spec.N(); ++j) {
        const PointRef& p = spec.endpoints[static_cast<std::size_t>(j)];
        if (p.manifold < 0 || p.manifold >= spec.m() ||
            p.point < 0 || p.point >= spec.manifolds[static_cast<std::size_t>(p.manifold)].mu()) {
            err("BadGluing", "endpoint " + std::to_string(j) + " references a missing gluing point");
            refs_ok = false;
            continue;
        }
        if (!used.insert({p.manifold, p.point}).second)
            err("BadGluing", "gluing point (" + std::to_string(p.manifold) + "," +
                                 std::to_string(p.point) + ") is used by more than one endpoint");
    }
    // With sum(mu) = 2n, injectivity already implies the map is onto.

    if (refs_ok && spec.m() > 0) {
        std::vector<char> seen(static_cast<std::size_t>(spec.m()), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            int at = queue.front();
            queue.pop_front();
            for (int k = 0; k < spec.n(); ++k) {
                int u = spec.endpoints[static_cast<std::size_t>(2 * k)].manifold;
                int v = spec.endpoints[static_cast<std::size_t>(2 * k + 1)].manifold;
                if (u != at && v != at) continue;
                int other = (u == at) ? v : u;
                if (!seen[static_cast<std::size_t>(other)]) {
                    seen[static_cast<std::size_t>(other)] = 1;
                    queue.push_back(other);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            err("NotConnected", "the glued space is not path connected");
    }

    return errs;
}

namespace {

/// Rank of an r x 4 matrix over the Gaussian rationals by Gauss elimination.
int gq_rank(std::vector<std::array<GQ, 4>> rows) {
    int rank = 0;
    for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const auto& prow = rows[static_cast<std::size_t>(rank)];
        GQ pinv = inv(prow[static_cast<std::size_t>(col)]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            auto& row = rows[static_cast<std::size_t>(r)];
            GQ f = row[static_cast<std::size_t>(col)] * pinv;
            if (f.is_zero()) continue;
            for (int cc = col; cc < 4; ++cc)
                row[static_cast<std::size_t>(cc)] -= f * prow[static_cast<std::size_t>(cc)];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::array<GQ, 4>> bc_rows(const Mat2& A, const Mat2& B) {
    // Rows of the 2x4 block matrix [A | -B].
    return {{A.a, A.b, -B.a, -B.b}, {A.c, A.d, -B.c, -B.d}};
}

}  // namespace

void check_blocks(const BoundaryCondition& bc) {
    for (int j = 0; j < bc.N(); ++j) {
        const auto& blk = bc.blocks[static_cast<std::size_t>(j)];
        Mat2 ab = blk.A * blk.B.adjoint();
        if (!ab.is_hermitian())
            throw NotSelfAdjoint("block " + std::to_string(j) + ": A B* is not Hermitian");
        Mat2 s = blk.A * blk.A.adjoint() + blk.B * blk.B.adjoint();
        if (s.det().is_zero())
            throw NotSelfAdjoint("block " + std::to_string(j) + ": det(A A* + B B*) = 0");
    }
}

BoundaryCondition canonicalize(const BoundaryCondition& bc) {
    check_blocks(bc);
    BoundaryCondition out = bc;
    GQ i01(Rational(0), Rational(1));
    for (int j = 0; j < out.N(); ++j) {
        auto& blk = out.blocks[static_cast<std::size_t>(j)];
        Mat2 iB = i01 * blk.B;
        Mat2 am = blk.A - iB;
        if (am.det().is_zero())
            throw NotSelfAdjoint("block " + std::to_string(j) + ": A - iB is singular");
        // Inverse on the left: -(A - iB)^{-1}(A + iB).  Left-multiplying
        // (A, B) by an invertible L then cancels, so equal boundary
        // conditions get equal canonical forms; the right-inverse order
        // would conjugate Phi by L and lose unitarity.
        Mat2 phi = GQ(-1) * (am.inverse() * (blk.A + iB));
        if (!(phi * phi.adjoint() == Mat2::identity()))
            throw NotSelfAdjoint("block " + std::to_string(j) + ": canonical form is not unitary");
        // (1 - Phi, i(1 + Phi)) must impose the same condition as (A, B):
        // the stacked 4x4 matrix of both row pairs must still have rank 2.
        Mat2 a2 = Mat2::identity() - phi;
        Mat2 b2 = i01 * (Mat2::identity() + phi);
        auto rows = bc_rows(blk.A, blk.B);
        for (auto& row : bc_rows(a2, b2)) rows.push_back(row);
        if (gq_rank(std::move(rows)) != 2)
            throw NotSelfAdjoint("block " + std::to_string(j) +
                                 ": canonical form changes the boundary condition");
        blk.Phi = phi;
    }
    return out;
}

std::vector<bool> check_reducible(const BoundaryCondition& bc) {
    BoundaryCondition c = bc;
    bool need = std::any_of(c.blocks.begin(), c.blocks.end(),
                            [](const BCBlock& b) { return !b.Phi.has_value(); });
    if (need) c = canonicalize(c);
    std::vector<bool> out;
    out.reserve(static_cast<std::size_t>(c.N()));
    for (const auto& blk : c.blocks)
        out.push_back(blk.Phi->b.is_zero() && blk.Phi->c.is_zero());
    return out;
}

void require_non_reducible(const BoundaryCondition& bc) {
    auto red = check_reducible(bc);
    for (int j = 0; j < static_cast<int>(red.size()); ++j)
        if (red[static_cast<std::size_t>(j)])
            throw Reducible("block " + std::to_string(j) + " is reducible (diagonal canonical form)");
}

int n_zero_count(const BoundaryCondition& bc) {
    int count = 0;
    for (const auto& blk : bc.blocks)
        if (!(blk.A.b * blk.B.c - blk.A.d * blk.B.a).is_zero()) ++count;
    return count;
}

BoundaryCondition SelfAdjointDiagBC::to_boundary_condition() const {
    BoundaryCondition bc;
    for (std::size_t j = 0; j < points.size(); ++j) {
        const Triple& t = points[j];
        if (t.lambda_seg == 0)
            throw NotSelfAdjoint("point " + std::to_string(j) + ": lambda_seg must be non-zero");
        BCBlock blk;
        blk.A = Mat2(GQ(t.lambda_top), t.lambda_off, conj(t.lambda_off), GQ(t.lambda_seg));
        blk.B = Mat2::identity();
        bc.blocks.push_back(std::move(blk));
    }
    return bc;
}

}  // namespace hybrid
