#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hybrid/errors.hpp"
#include "hybrid/inverse.hpp"

#include <algorithm>
#include <random>

using namespace hybrid;

namespace {

// Torus joined to itself by n segments of unit-ish lengths; every point
// carries some local heat data so the heat-subtraction paths are exercised.
HybridSpec torus_hybrid(int n_segments) {
    HybridSpec h;
    ManifoldSpec t;
    t.name = "torus";
    t.volume = scalar_int(4) * scalar_pi() * scalar_pi();
    t.euler_char = 0;
    for (int i = 0; i < 2 * n_segments; ++i)
        t.gluing_points.push_back(
            {"p" + std::to_string(i), {scalar_from_rational(Rational(i + 1, 7))}});
    h.manifolds.push_back(t);
    for (int k = 0; k < n_segments; ++k) {
        h.segments.push_back({"s" + std::to_string(k), scalar_from_rational(Rational(k + 1))});
        h.endpoints.push_back({0, 2 * k});
        h.endpoints.push_back({0, 2 * k + 1});
    }
    return h;
}

PseudoSeries smooth_sphere_series(int order) {
    HybridSpec h;
    ManifoldSpec s;
    s.name = "sphere";
    s.volume = scalar_int(4) * scalar_pi();
    s.euler_char = 2;
    h.manifolds.push_back(s);
    PseudoSeries acc(order);
    for (const auto& m : h.manifolds) acc = ps_add(acc, manifold_trace_base(m, order));
    return lambda_to_L(acc);
}

Real50 rel_err(const Real50& got, const Real50& want) {
    using boost::multiprecision::abs;
    return abs(got - want) / (Real50(1) + abs(want));
}

}  // namespace

TEST_CASE("detect_hybrid") {
    CHECK(!detect_hybrid(smooth_sphere_series(8)));
    HybridSpec h = torus_hybrid(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(0), GQ(0), Rational(1)});
    bc.points.push_back({Rational(0), GQ(0), Rational(2)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 6);
    CHECK(detect_hybrid(exp.series));
    PseudoSeries flat(4);
    flat.set(2, ratl_scalar(scalar_int(1)));
    CHECK(!detect_hybrid(flat));
}

TEST_CASE("recover_geometry: torus + segment round trip") {
    HybridSpec h = torus_hybrid(1);
    h.segments[0].length = scalar_int(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(1), GQ(Rational(1, 2)), Rational(1)});
    bc.points.push_back({Rational(0), GQ(0), Rational(3)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 6);
    InverseReport rep = recover_geometry(exp.series);
    CHECK(rep.is_hybrid);
    CHECK(rep.sum_vol == scalar_int(4) * scalar_pi() * scalar_pi());
    CHECK(rep.sum_len == scalar_int(1));
    CHECK(rep.n_segments == 1);
    CHECK(rep.sum_euler == 0);
    CHECK(rep.euler_hybrid == -2);
}

TEST_CASE("recover_geometry: smooth sphere") {
    InverseReport rep = recover_geometry(smooth_sphere_series(8));
    CHECK(!rep.is_hybrid);
    CHECK(rep.sum_vol == scalar_int(4) * scalar_pi());
    CHECK(rep.sum_len == Scalar{});
    CHECK(rep.n_segments == 0);
    CHECK(rep.sum_euler == 2);
    CHECK(rep.euler_hybrid == 2);
    InverseReport full = invert(smooth_sphere_series(8), HybridSpec{});
    CHECK(full.lambda_seg.empty());
    CHECK(full.conditioning.size() == 4);
    CHECK(full.conditioning[1].status.substr(0, 7) == "skipped");
}

TEST_CASE("recover_geometry: malformed input") {
    PseudoSeries bad(4);
    bad.set(2, ratl_L());  // L-dependent c_2
    bad.set(4, ratl_scalar(Scalar{}));
    CHECK_THROWS_AS(recover_geometry(bad), MalformedSeries);
    PseudoSeries short_series(3);
    CHECK_THROWS_AS(recover_geometry(short_series), MalformedSeries);
}

TEST_CASE("newton/viete worked example: p = (3, 5) -> roots {1, 2}") {
    // Forward data with lambda_seg = 1 and 1/2 gives x = 1, 2: p_1 = 3, p_2 = 5.
    HybridSpec h = torus_hybrid(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(0), GQ(0), Rational(1)});
    bc.points.push_back({Rational(0), GQ(0), Rational(1, 2)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 6);
    std::vector<Real50> l = recover_lambda_seg(exp.series, h);
    REQUIRE(l.size() == 2);
    CHECK(rel_err(l[0], Real50(1) / 2) < 1e-20);
    CHECK(rel_err(l[1], Real50(1)) < 1e-20);
}

TEST_CASE("recover_lambda_seg: N = 4 exact-data round trip") {
    HybridSpec h = torus_hybrid(2);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(1), GQ(Rational(1), Rational(1)), Rational(1)});
    bc.points.push_back({Rational(-1), GQ(Rational(1, 2)), Rational(2)});
    bc.points.push_back({Rational(0), GQ(Rational(0), Rational(2)), Rational(3)});
    bc.points.push_back({Rational(2), GQ(Rational(1, 3)), Rational(4)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 8);
    std::vector<Real50> l = recover_lambda_seg(exp.series, h);
    REQUIRE(l.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(rel_err(l[static_cast<std::size_t>(i)], Real50(i + 1)) < 1e-8);
}

TEST_CASE("recover_lambda_seg: duplicates raise RepeatedRoots") {
    HybridSpec h = torus_hybrid(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(0), GQ(0), Rational(1)});
    bc.points.push_back({Rational(0), GQ(0), Rational(1)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 6);
    CHECK_THROWS_AS(recover_lambda_seg(exp.series, h), RepeatedRoots);
}

TEST_CASE("recover_lambda_seg: invariant under point relabeling") {
    HybridSpec h = torus_hybrid(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(0), GQ(0), Rational(3)});
    bc.points.push_back({Rational(0), GQ(0), Rational(7, 5)});
    ExpansionResult e1 = assemble_trace(h, bc.to_boundary_condition(), 6);
    std::swap(bc.points[0], bc.points[1]);
    std::swap(h.manifolds[0].gluing_points[0], h.manifolds[0].gluing_points[1]);
    ExpansionResult e2 = assemble_trace(h, bc.to_boundary_condition(), 6);
    std::vector<Real50> l1 = recover_lambda_seg(e1.series, h);
    std::vector<Real50> l2 = recover_lambda_seg(e2.series, h);
    REQUIRE(l1.size() == l2.size());
    for (std::size_t i = 0; i < l1.size(); ++i) CHECK(rel_err(l1[i], l2[i]) < 1e-20);
}

TEST_CASE("full round trip: lambda recovery within 1e-6") {
    // Ascending lambda_seg paired with the endpoint order (the documented
    // pairing convention for the heat data).
    HybridSpec h = torus_hybrid(2);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(-1, 2), GQ(Rational(3, 5), Rational(4, 5)), Rational(1, 3)});
    bc.points.push_back({Rational(2), GQ(Rational(0)), Rational(1)});
    bc.points.push_back({Rational(0), GQ(Rational(0), Rational(3, 2)), Rational(2)});
    bc.points.push_back({Rational(7, 4), GQ(Rational(-1)), Rational(7, 2)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 8);
    InverseReport rep = invert(exp.series, h);

    CHECK(rep.is_hybrid);
    CHECK(rep.n_segments == 2);
    REQUIRE(rep.lambda_seg.size() == 4);
    Real50 want_seg[4] = {Real50(1) / 3, Real50(1), Real50(2), Real50(7) / 2};
    Real50 want_off[4] = {Real50(1), Real50(0), Real50(3) / 2, Real50(1)};
    Real50 want_top[4] = {-Real50(1) / 2, Real50(2), Real50(0), Real50(7) / 4};
    for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(rel_err(rep.lambda_seg[static_cast<std::size_t>(i)], want_seg[i]) < 1e-6);
        CHECK(rel_err(rep.lambda_off_abs[static_cast<std::size_t>(i)], want_off[i]) < 1e-6);
        CHECK(rel_err(rep.lambda_top[static_cast<std::size_t>(i)], want_top[i]) < 1e-6);
    }
    for (const auto& d : rep.conditioning) CHECK(d.status.substr(0, 2) == "ok");
}

TEST_CASE("random round trips, N up to 6") {
    std::mt19937 rng(20260826);
    for (int trial = 0; trial < 3; ++trial) {
        int n_seg = 1 + static_cast<int>(rng() % 3);  // N = 2, 4, 6
        int n_pts = 2 * n_seg;
        HybridSpec h = torus_hybrid(n_seg);
        SelfAdjointDiagBC bc;
        std::vector<Rational> segs;
        for (int i = 0; i < n_pts; ++i) {
            // Distinct lambda_seg in [1/4, 4], ascending.
            Rational seg = Rational(1, 4) + Rational(static_cast<long>(rng() % 13) + 15 * i, 60);
            Rational top = Rational(static_cast<long>(rng() % 9) - 4, 2);
            GQ off(Rational(static_cast<long>(rng() % 5) - 2, 2),
                   Rational(static_cast<long>(rng() % 5) - 2, 2));
            bc.points.push_back({top, off, seg});
            segs.push_back(seg);
        }
        ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), n_pts + 4);
        InverseReport rep = invert(exp.series, h);
        REQUIRE(static_cast<int>(rep.lambda_seg.size()) == n_pts);
        for (int i = 0; i < n_pts; ++i) {
            CAPTURE(trial);
            CAPTURE(i);
            using boost::multiprecision::sqrt;
            Real50 want_off = sqrt(to_real50(norm_sq(bc.points[static_cast<std::size_t>(i)].lambda_off)));
            CHECK(rel_err(rep.lambda_seg[static_cast<std::size_t>(i)],
                          to_real50(segs[static_cast<std::size_t>(i)])) < 1e-6);
            CHECK(rel_err(rep.lambda_off_abs[static_cast<std::size_t>(i)], want_off) < 1e-6);
            CHECK(rel_err(rep.lambda_top[static_cast<std::size_t>(i)],
                          to_real50(bc.points[static_cast<std::size_t>(i)].lambda_top)) < 1e-6);
        }
    }
}

TEST_CASE("zero off-diagonals recover as zero; heat-data size mismatch rejected") {
    HybridSpec h = torus_hybrid(1);
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(1), GQ(0), Rational(1)});
    bc.points.push_back({Rational(-1), GQ(0), Rational(2)});
    ExpansionResult exp = assemble_trace(h, bc.to_boundary_condition(), 6);
    InverseReport rep = invert(exp.series, h);
    CHECK(rep.lambda_off_abs[0] == 0);
    CHECK(rep.lambda_off_abs[1] == 0);
    CHECK(rel_err(rep.lambda_top[0], Real50(1)) < 1e-6);
    CHECK(rel_err(rep.lambda_top[1], -Real50(1)) < 1e-6);
    HybridSpec wrong = torus_hybrid(2);
    CHECK_THROWS_AS(recover_lambda_seg(exp.series, wrong), ConfigError);
}
