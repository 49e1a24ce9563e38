// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Each criterion enforces both its correctness property and its runtime
// budget; failures carry a short diagnostic.

#include "hybrid/closed_forms.hpp"
#include "hybrid/engine.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/inverse.hpp"
#include "hybrid/oracle.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

using namespace hybrid;

namespace {

std::mt19937 rng(20260826);
int g_failures = 0;

void report(int id, const std::string& label, bool pass, double secs, double budget,
            const std::string& detail) {
    bool in_budget = secs <= budget;
    bool ok = pass && in_budget;
    if (!ok) ++g_failures;
    std::ostringstream line;
    line << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " - " << label << " ["
         << secs << "s / budget " << budget << "s]";
    if (!pass && !detail.empty()) line << " (" << detail << ")";
    if (pass && !in_budget) line << " (over budget)";
    std::cout << line.str() << "\n" << std::flush;
}

template <class Fn>
void criterion(int id, const std::string& label, double budget, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, label, pass, secs, budget, detail);
}

// ---------------------------------------------------------------------------
// Random model generators.
// ---------------------------------------------------------------------------

Rational rand_rat(int lo, int hi, int max_den = 4) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
    return Rational(num(rng), den(rng));
}

HybridSpec random_hybrid(int m, int n_segments) {
    HybridSpec h;
    std::uniform_int_distribution<int> chi_pick(0, 2);
    for (int i = 0; i < m; ++i) {
        ManifoldSpec spec;
        spec.name = "M" + std::to_string(i);
        std::uniform_int_distribution<int> v(1, 8);
        spec.volume = scalar_from_rational(Rational(v(rng))) * scalar_pi() * scalar_pi();
        spec.euler_char = 2 - 2 * chi_pick(rng);
        if (rng() % 2) spec.global_heat.push_back(scalar_from_rational(rand_rat(-3, 3)));
        h.manifolds.push_back(std::move(spec));
    }
    // endpoints[2k] on manifold k%m, endpoints[2k+1] on (k+1)%m: every segment
    // with both slots bridges adjacent manifolds, so the incidence graph is
    // connected for m <= 2.
    for (int k = 0; k < n_segments; ++k) {
        std::uniform_int_distribution<int> lv(1, 6);
        h.segments.push_back({"s" + std::to_string(k),
                              scalar_from_rational(Rational(lv(rng), 2))});
        for (int side = 0; side < 2; ++side) {
            int mi = (k + side) % m;
            GluingPointSpec pt;
            pt.label = "q" + std::to_string(2 * k + side);
            pt.local_heat.push_back(scalar_from_rational(rand_rat(-3, 3)));
            if (rng() % 2) pt.local_heat.push_back(scalar_from_rational(rand_rat(-2, 2)));
            auto& mfd = h.manifolds[static_cast<std::size_t>(mi)];
            h.endpoints.push_back({mi, static_cast<int>(mfd.gluing_points.size())});
            mfd.gluing_points.push_back(std::move(pt));
        }
    }
    return h;
}

SelfAdjointDiagBC random_diag_bc(int n_points) {
    SelfAdjointDiagBC bc;
    // Distinct lambda_seg in [1/4, 4]: shuffled grid 1/4 + j*15/(4*(n-1)).
    std::vector<Rational> segs;
    for (int j = 0; j < n_points; ++j)
        segs.push_back(Rational(1, 4) + Rational(15 * j, 4 * std::max(1, n_points - 1)));
    std::shuffle(segs.begin(), segs.end(), rng);
    for (int j = 0; j < n_points; ++j) {
        std::uniform_int_distribution<int> c(-4, 4);
        bc.points.push_back({Rational(c(rng), 2), GQ(Rational(c(rng), 3), Rational(c(rng), 3)),
                             segs[static_cast<std::size_t>(j)]});
    }
    return bc;
}

Mat2 random_invertible() {
    std::uniform_int_distribution<int> c(-2, 2);
    for (;;) {
        Mat2 l(GQ(Rational(c(rng)), Rational(c(rng))), GQ(Rational(c(rng))),
               GQ(Rational(c(rng))), GQ(Rational(c(rng)), Rational(c(rng))));
        if (!l.det().is_zero()) return l;
    }
}

Scalar sum_vol(const HybridSpec& h) {
    Scalar s;
    for (const auto& m : h.manifolds) s = s + m.volume;
    return s;
}

Scalar sum_len(const HybridSpec& h) {
    Scalar s;
    for (const auto& seg : h.segments) s = s + seg.length;
    return s;
}

long sum_chi(const HybridSpec& h) {
    long s = 0;
    for (const auto& m : h.manifolds) s += m.euler_char;
    return s;
}

// The torus + one segment fixture with finite heat data (so the oracle's
// truncated expressions are exact) used by criteria 5 and 7.
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

SelfAdjointDiagBC fixture_bc() {
    SelfAdjointDiagBC bc;
    bc.points.push_back({Rational(3, 2), GQ(Rational(1), Rational(1, 2)), Rational(2)});
    bc.points.push_back({Rational(-1, 3), GQ(Rational(0), Rational(2)), Rational(5, 3)});
    return bc;
}

// ---------------------------------------------------------------------------
// Criteria.
// ---------------------------------------------------------------------------

bool c1_leading(std::string& detail) {
    for (int trial = 0; trial < 10; ++trial) {
        int m = 1 + static_cast<int>(rng() % 2);
        int n = 1 + static_cast<int>(rng() % 3);  // N = 2n <= 6
        HybridSpec h = random_hybrid(m, n);
        SelfAdjointDiagBC bc = random_diag_bc(2 * n);
        ExpansionResult res = assemble_trace(h, bc.to_boundary_condition(), 5);
        Scalar c2 = sum_vol(h) / (scalar_int(4) * scalar_pi());
        if (res.series.coeff(2) != ratl_scalar(c2)) {
            detail = "c_2 mismatch at trial " + std::to_string(trial);
            return false;
        }
        Scalar c3 = sum_len(h) * scalar_from_rational(Rational(1, 4));
        if (res.series.coeff(3) != ratl_scalar(c3)) {
            detail = "c_3 mismatch at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool c2_c4_structure(std::string& detail) {
    HybridSpec h = torus_one_segment();

    // Generic section-5 family: N_0 = N = 2.
    ExpansionResult generic = assemble_trace(h, fixture_bc().to_boundary_condition(), 4);
    LTail t = ps_l_tail(generic.series.coeff(4), 1);
    Scalar limit = scalar_from_rational(Rational(sum_chi(h), 6) + Rational(2, 4));
    if (generic.n_zero != 2 || t.coeffs[0] != limit || t.coeffs[1] != scalar_int(2)) {
        detail = "generic case: expected limit chi/6 + N/4 and 1/L coefficient N_0 = 2";
        return false;
    }

    // Constructed block with a_{i,i+N} b_{i+N,i} - a_{i+N,i+N} b_{i,i} = 0:
    // (A, B) = (I, sigma_x) is self-adjoint, non-reducible, and drops out of
    // the 1/L correction, so N_0 = 1 < N = 2.
    BoundaryCondition mixed;
    SelfAdjointDiagBC one;
    one.points.push_back(fixture_bc().points[0]);
    mixed.blocks.push_back(one.to_boundary_condition().blocks[0]);
    BCBlock swap_block;
    swap_block.A = Mat2::identity();
    swap_block.B = Mat2(GQ(0), GQ(1), GQ(1), GQ(0));
    mixed.blocks.push_back(swap_block);
    check_blocks(mixed);
    require_non_reducible(mixed);
    ExpansionResult special = assemble_trace(h, mixed, 4);
    LTail ts = ps_l_tail(special.series.coeff(4), 1);
    if (special.n_zero != 1 || ts.coeffs[0] != limit || ts.coeffs[1] != scalar_int(1)) {
        detail = "constructed case: expected N_0 = 1 in the 1/L coefficient";
        return false;
    }
    return true;
}

bool c3_extension_invariance(std::string& detail) {
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        HybridSpec h = random_hybrid(1 + static_cast<int>(rng() % 2), n);
        BoundaryCondition bc = random_diag_bc(2 * n).to_boundary_condition();
        BoundaryCondition scaled = bc;
        for (auto& blk : scaled.blocks) {
            Mat2 l = random_invertible();
            blk.A = l * blk.A;
            blk.B = l * blk.B;
            blk.Phi.reset();
        }
        ExpansionResult a = assemble_trace(h, bc, 8);
        ExpansionResult b = assemble_trace(h, scaled, 8);
        if (!(a.series == b.series) || a.n_zero != b.n_zero) {
            detail = "coefficient tables differ at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool c4_segment_base(std::string& detail) {
    Scalar l = scalar_from_rational(Rational(7, 2));
    PseudoSeries base = segment_trace_base(l, 6);
    PseudoSeries expect(6);
    expect.set(3, ratl_scalar(l * scalar_from_rational(Rational(1, 4))));
    expect.set(4, ratl_scalar(scalar_from_rational(Rational(1, 2))));
    if (!(base == expect)) {
        detail = "series form is not l/(4z^3) + 1/(2z^4)";
        return false;
    }
    Real50 z(30), lv = eval_scalar(l).re;
    Real50 diff = abs(Complex50{segment_trace_quadrature(lv, z) - ps_eval(base, z).re});
    if (!(diff < Real50("1e-12"))) {
        detail = "quadrature mismatch " + diff.str(3);
        return false;
    }
    return true;
}

bool c5_series_vs_oracle(std::string& detail) {
    HybridSpec h = torus_one_segment();
    BoundaryCondition bc = fixture_bc().to_boundary_condition();
    ExpansionResult res = assemble_trace(h, bc, 10);
    Real50 prev(-1);
    for (int zi : {50, 100, 200, 400}) {
        Real50 z(zi);
        Real50 diff = abs(Complex50{ps_eval(res.series, z).re - eval_thexpan(h, bc, z, 12)});
        if (prev >= 0 && !(diff < prev)) {
            detail = "difference not decreasing at z = " + std::to_string(zi);
            return false;
        }
        prev = diff;
        if (zi == 400 && !(diff < Real50("1e-10"))) {
            detail = "difference at z = 400 is " + diff.str(3);
            return false;
        }
    }
    return true;
}

bool c6_torus_bessel(std::string& detail) {
    Real50 pi = const_pi_50();
    std::array<Real50, 2> v1{2 * pi, Real50(0)}, v2{Real50(0), 2 * pi};
    Real50 prev(-1);
    for (int zi : {5, 6, 8}) {
        Real50 z(zi);
        TorusFDerivatives d = torus_F_derivative(v1, v2, z, 3);
        Real50 res = abs(Complex50{d.f_prime + 1 / (2 * pi * z)});
        if (zi == 5 && !(res < Real50("1e-8"))) {
            detail = "residual at z = 5 is " + res.str(3);
            return false;
        }
        if (prev >= 0 && !(res < prev)) {
            detail = "residual not decreasing at z = " + std::to_string(zi);
            return false;
        }
        prev = res;
    }
    return true;
}

bool c7_closed_forms(std::string& detail) {
    ClosedFormReport rep = compare_closed_forms(torus_one_segment(), fixture_bc(), 10);
    if (rep.unexplained_mismatches != 0) {
        detail = std::to_string(rep.unexplained_mismatches) + " unexplained mismatches";
        return false;
    }
    bool some_whitelisted = false;
    for (const auto& e : rep.entries)
        if (e.whitelisted && !e.match) some_whitelisted = true;
    if (!some_whitelisted) {
        detail = "expected the known printed-exponent discrepancies to be whitelisted";
        return false;
    }
    return true;
}

bool c8_inverse_roundtrip(std::string& detail) {
    for (int trial = 0; trial < 20; ++trial) {
        int n_points = (trial < 12) ? 2 : (trial < 18 ? 4 : 6);
        HybridSpec h = random_hybrid(1 + static_cast<int>(rng() % 2), n_points / 2);
        SelfAdjointDiagBC bc = random_diag_bc(n_points);
        ExpansionResult fwd = assemble_trace(h, bc.to_boundary_condition(), n_points + 5);
        InverseReport rep = invert(fwd.series, h);

        if (!(rep.sum_vol == sum_vol(h)) || !(rep.sum_len == sum_len(h)) ||
            rep.n_segments != h.n() || rep.sum_euler != sum_chi(h) ||
            rep.euler_hybrid != sum_chi(h) - 2 * h.n()) {
            detail = "geometry not exact at trial " + std::to_string(trial);
            return false;
        }

        struct Ref {
            Real50 seg, off, top;
        };
        std::vector<Ref> refs;
        for (const auto& p : bc.points)
            refs.push_back({to_real50(p.lambda_seg),
                            abs(Complex50{eval_gq(p.lambda_off)}), to_real50(p.lambda_top)});
        std::sort(refs.begin(), refs.end(),
                  [](const Ref& a, const Ref& b) { return a.seg < b.seg; });
        Real50 tol("1e-6");
        for (int i = 0; i < n_points; ++i) {
            auto rel = [&](const Real50& got, const Real50& want) {
                return abs(Complex50{got - want}) /
                       (std::max)(Real50(1), abs(Complex50{want}));
            };
            std::size_t k = static_cast<std::size_t>(i);
            if (rel(rep.lambda_seg[k], refs[k].seg) > tol ||
                rel(rep.lambda_off_abs[k], refs[k].off) > tol ||
                rel(rep.lambda_top[k], refs[k].top) > tol) {
                detail = "lambda recovery beyond 1e-6 at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    return true;
}

bool c9_hybrid_detection(std::string& detail) {
    HybridSpec sphere;
    ManifoldSpec s;
    s.name = "sphere";
    s.volume = scalar_int(4) * scalar_pi();
    s.euler_char = 2;
    s.global_heat.push_back(scalar_from_rational(Rational(1, 9)));
    sphere.manifolds.push_back(s);
    if (detect_hybrid(manifold_trace_base(s, 8))) {
        detail = "smooth manifold reported as hybrid";
        return false;
    }
    for (int n = 1; n <= 3; ++n) {
        HybridSpec h = random_hybrid(1, n);
        ExpansionResult res = assemble_trace(h, random_diag_bc(2 * n).to_boundary_condition(), 4);
        if (!detect_hybrid(res.series)) {
            detail = "hybrid with N = " + std::to_string(2 * n) + " not detected";
            return false;
        }
    }
    return true;
}

Scalar random_gq_scalar() {
    std::uniform_int_distribution<int> d(-4, 4);
    return scalar_from_gq(GQ(Rational(d(rng)), Rational(d(rng))));
}

RatL random_ratl() {
    std::uniform_int_distribution<int> d(0, 2);
    Poly<Scalar> num, den;
    int dn = d(rng), dd = d(rng);
    for (int k = 0; k <= dn; ++k) num.c.push_back(random_gq_scalar());
    num.trim();
    for (int k = 0; k < dd; ++k) den.c.push_back(random_gq_scalar());
    den.c.push_back(scalar_int(1));
    return RatL(num, den);
}

PseudoSeries random_series(int order, bool poly_coeffs = false) {
    PseudoSeries p(order);
    for (int q = 0; q <= order; ++q) {
        if (rng() % 3 == 0) continue;
        if (poly_coeffs) {
            Poly<Scalar> num;
            std::uniform_int_distribution<int> d(0, 2);
            int dn = d(rng);
            for (int k = 0; k <= dn; ++k) num.c.push_back(random_gq_scalar());
            num.trim();
            p.set(q, RatL(num));
        } else {
            p.set(q, random_ratl());
        }
    }
    return p;
}

bool c10_ring_properties(std::string& detail) {
    for (int trial = 0; trial < 700; ++trial) {
        PseudoSeries a = random_series(4), b = random_series(4), c = random_series(4);
        if (!(ps_mul(a, ps_add(b, c)) == ps_add(ps_mul(a, b), ps_mul(a, c))) ||
            !(ps_mul(a, b) == ps_mul(b, a)) ||
            !(ps_mul(ps_mul(a, b), c) == ps_mul(a, ps_mul(b, c)))) {
            detail = "ring law violated at trial " + std::to_string(trial);
            return false;
        }
    }
    PseudoSeries one = PseudoSeries::constant(scalar_int(1), 4);
    for (int trial = 0; trial < 300; ++trial) {
        PseudoSeries a = random_series(4);
        a.set(0, ratl_scalar(scalar_int(1 + static_cast<int>(rng() % 5))));
        if (!(ps_mul(a, ps_reciprocal(a)) == one)) {
            detail = "reciprocal law violated at trial " + std::to_string(trial);
            return false;
        }
    }
    // ps_dz vs central finite differences of ps_eval.
    Real50 z(50), hstep("1e-10");
    for (int trial = 0; trial < 100; ++trial) {
        PseudoSeries a = random_series(4, /*poly_coeffs=*/true);
        Complex50 exact = ps_eval(ps_dz(a), z);
        Complex50 up = ps_eval(a, z + hstep), dn = ps_eval(a, z - hstep);
        Complex50 fd{(up.re - dn.re) / (2 * hstep), (up.im - dn.im) / (2 * hstep)};
        Real50 scale = (std::max)(Real50(1), abs(exact));
        if (!(abs(fd - exact) / scale < Real50("1e-6"))) {
            detail = "ps_dz disagrees with finite differences at trial " +
                     std::to_string(trial);
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "c_2 = sum vol/(4pi), c_3 = sum l/4 exactly on 10 random hybrids", 10,
              c1_leading);
    criterion(2, "c_4 tail: limit chi/6 + N/4 and 1/L coefficient N_0 (both N_0 cases)", 10,
              c2_c4_structure);
    criterion(3, "extension invariance under 20 random invertible block scalings", 30,
              c3_extension_invariance);
    criterion(4, "segment base l/(4z^3) + 1/(2z^4) exact; quadrature at z=30 within 1e-12", 10,
              c4_segment_base);
    criterion(5, "series vs oracle monotone in z, below 1e-10 at z=400", 60,
              c5_series_vs_oracle);
    criterion(6, "flat-torus lattice sum: |F'(5) + 1/(10pi)| < 1e-8, decreasing in z", 30,
              c6_torus_bessel);
    criterion(7, "closed-form cross-check with zero unexplained mismatches", 60,
              c7_closed_forms);
    criterion(8, "20 random inverse round trips, lambdas within 1e-6, geometry exact", 120,
              c8_inverse_roundtrip);
    criterion(9, "hybrid detection exact on smooth and hybrid series", 5, c9_hybrid_detection);
    criterion(10, "1000 ring/reciprocal laws exact; ps_dz matches finite differences", 60,
              c10_ring_properties);
    return g_failures == 0 ? 0 : 1;
}
