#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hybrid/engine.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/oracle.hpp"

using namespace hybrid;
using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::sinh;

namespace {

// Torus with two gluing points carrying local heat data, one segment.  The
// heat data is finite, so the truncated oracle expressions are exact for this
// fixture and the series/oracle difference isolates the expansion tail.
HybridSpec torus_one_segment() {
    HybridSpec h;
    ManifoldSpec t;
    t.name = "torus";
    t.volume = scalar_int(4) * scalar_pi() * scalar_pi();
    t.euler_char = 0;
    t.gluing_points.push_back({"p0", {scalar_from_rational(Rational(1, 3)),
                                      scalar_from_rational(Rational(2, 5))}});
    t.gluing_points.push_back({"p1", {scalar_from_rational(Rational(-1, 2))}});
    h.manifolds.push_back(t);
    h.segments.push_back({"s0", scalar_int(2)});
    h.endpoints = {{0, 0}, {0, 1}};
    return h;
}

SelfAdjointDiagBC sample_bc() {
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(3, 2), GQ(Rational(1), Rational(1, 2)), Rational(2)});
    bc.points.push_back({Rational(-1, 3), GQ(Rational(0), Rational(2)), Rational(5, 3)});
    return bc;
}

Real50 coth50(const Real50& x) { return cosh(x) / sinh(x); }

}  // namespace

TEST_CASE("series matches oracle at finite z and the gap shrinks with z") {
    HybridSpec h = torus_one_segment();
    ExpansionResult exp_res = assemble_trace(h, sample_bc().to_boundary_condition(), 10);

    Real50 prev(-1);
    for (int zi : {50, 100, 200}) {
        Real50 z(zi);
        Real50 series = ps_eval(exp_res.series, z).re;
        Real50 oracle = eval_thexpan(h, sample_bc().to_boundary_condition(), z, 12);
        Real50 diff = abs(Complex50{series - oracle});
        CAPTURE(zi);
        // The values themselves agree to many digits...
        CHECK(diff < Real50("1e-15"));
        CHECK(diff > 0);
        // ...and the gap is monotone decreasing in z.
        if (prev >= 0) CHECK(diff < prev);
        prev = diff;
    }
}

TEST_CASE("degenerate N=0 hybrid: oracle equals the heat-trace partial sum exactly") {
    HybridSpec h;
    ManifoldSpec s;
    s.name = "sphere";
    s.volume = scalar_int(4) * scalar_pi();
    s.euler_char = 2;
    s.global_heat = {scalar_from_rational(Rational(1, 9))};  // a_2
    h.manifolds.push_back(s);
    BoundaryCondition bc;  // no blocks

    Real50 z(25);
    Real50 pi = const_pi_50();
    Real50 expected(0);
    for (int k = 0; k <= 6; ++k) {
        Scalar a = s.global_a(k);
        if (a.is_zero()) continue;
        Real50 fact(1);
        for (int j = 2; j <= k; ++j) fact *= j;
        Real50 zp(1);
        for (int e = 0; e < 2 * k + 2; ++e) zp *= z;
        expected += eval_scalar(a).re * fact / (4 * pi * zp);
    }
    CHECK(eval_thexpan(h, bc, z, 6) == expected);
}

TEST_CASE("segment Weyl entry is 1/z up to an exponentially small tail") {
    for (auto [lv, zv] : {std::pair{1, 5}, {2, 5}, {1, 12}, {3, 10}}) {
        Real50 l(lv), z(zv);
        REQUIRE(z * l >= 5);
        Real50 tail = abs(Complex50{coth50(z * l) / z - 1 / z});
        CAPTURE(lv);
        CAPTURE(zv);
        CHECK(tail < exp(-z * l));
    }
}

TEST_CASE("segment base trace quadrature matches l/(4z^3) + 1/(2z^4)") {
    Real50 l(2), z(30);
    Real50 q = segment_trace_quadrature(l, z);
    Real50 closed = l / (4 * z * z * z) + 1 / (2 * z * z * z * z);
    CHECK(abs(Complex50{q - closed}) < Real50("1e-12"));
}

TEST_CASE("torus lattice sum reproduces the universal F derivatives") {
    Real50 pi = const_pi_50();
    std::array<Real50, 2> v1{2 * pi, Real50(0)}, v2{Real50(0), 2 * pi};

    TorusFDerivatives d5 = torus_F_derivative(v1, v2, Real50(5), 3);
    Real50 r5 = abs(Complex50{d5.f_prime + 1 / (2 * pi * 5)});
    CHECK(r5 < Real50("1e-8"));
    CHECK(r5 > 0);
    CHECK(abs(Complex50{d5.f_second - 1 / (2 * pi * 25)}) < Real50("1e-8"));

    // Doubling z shrinks the residual at least exponentially (factor e^{-10}
    // would already follow from the nearest image alone; demand much more).
    TorusFDerivatives d10 = torus_F_derivative(v1, v2, Real50(10), 3);
    Real50 r10 = abs(Complex50{d10.f_prime + 1 / (2 * pi * 10)});
    CHECK(r10 < r5 * Real50("1e-5"));

    // A cutoff that cannot certify the tail is rejected.
    CHECK_THROWS_AS(torus_F_derivative(v1, v2, Real50(2), 1), CutoffTooSmall);
    CHECK_THROWS_AS(torus_F_derivative(v1, v2, Real50(5), 0), CutoffTooSmall);
}
