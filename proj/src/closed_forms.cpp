#include "hybrid/closed_forms.hpp"

#include "hybrid/errors.hpp"

#include <string>

namespace hybrid {

namespace {

Rational rat_factorial(int n) {
    Rational f(1);
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Rational rat_pow(const Rational& x, int e) {
    Rational p(1);
    for (int k = 0; k < e; ++k) p *= x;
    return p;
}

Scalar inv_4pi() { return inv(scalar_int(4) * scalar_pi()); }

const GluingPointSpec& point_at(const HybridSpec& hybrid, int j) {
    const PointRef& ref = hybrid.endpoints[static_cast<std::size_t>(j)];
    return hybrid.manifolds[static_cast<std::size_t>(ref.manifold)]
        .gluing_points[static_cast<std::size_t>(ref.point)];
}

/// Local heat coefficient with the a_0 = 1 convention used by the lemmas.
Scalar local_a(const GluingPointSpec& p, int n) {
    if (n == 0) return scalar_int(1);
    return p.local_a(n);
}

void check_args(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid) {
    if (static_cast<int>(bc.points.size()) != hybrid.N())
        throw ConfigError("closed forms: boundary data has " + std::to_string(bc.points.size()) +
                          " triples but the hybrid has " + std::to_string(hybrid.N()) + " points");
}

}  // namespace

Scalar lemma51_printed(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid, int n) {
    check_args(bc, hybrid);
    if (n < 4) throw ConfigError("lemma51_printed: n must be >= 4");
    Scalar out;
    if (n == 4) {
        Rational chi(0);
        for (const auto& m : hybrid.manifolds) chi += m.euler_char;
        return scalar_from_rational(chi / 6 + Rational(hybrid.N(), 4));
    }
    if (n % 2 == 1) {
        // n = 2k+1, k > 1: printed exponent is 2k+1 (= n), known misprint.
        int k = (n - 1) / 2;
        Rational s(0);
        for (const auto& t : bc.points) s += Rational(2 * k - 1) / (4 * rat_pow(t.lambda_seg, n));
        return scalar_from_rational(s);
    }
    // n = 2k+2, k > 1.
    int k = (n - 2) / 2;
    for (const auto& m : hybrid.manifolds)
        out = out + m.global_a(k) * scalar_from_rational(rat_factorial(k)) * inv_4pi();
    Rational s(0);
    for (const auto& t : bc.points) s += Rational(2 * k) / (4 * rat_pow(t.lambda_seg, 2 * k - 2));
    return out + scalar_from_rational(s);
}

Scalar lemma51_derived(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid, int n) {
    check_args(bc, hybrid);
    if (n < 4) throw ConfigError("lemma51_derived: n must be >= 4");
    Scalar out;
    if (n % 2 == 0) {
        int k = (n - 2) / 2;
        for (const auto& m : hybrid.manifolds)
            out = out + m.global_a(k) * scalar_from_rational(rat_factorial(k)) * inv_4pi();
    }
    Rational s(0);
    for (const auto& t : bc.points) {
        if (n == 4)
            s += Rational(1, 4);
        else
            s += Rational(n - 2) / (4 * rat_pow(t.lambda_seg, n - 4));
    }
    return out + scalar_from_rational(s);
}

Scalar lemma52_printed(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid, int n) {
    check_args(bc, hybrid);
    if (n < 4) throw ConfigError("lemma52_printed: n must be >= 4");
    Scalar out;
    Rational coupling(0);
    for (const auto& t : bc.points)
        coupling +=
            Rational(n - 4) * Rational(n - 2) * norm_sq(t.lambda_off) / rat_pow(t.lambda_seg, n - 3);
    out = scalar_pi() * scalar_from_rational(coupling);
    if (n % 2 == 0) {
        int l = (n - 4) / 2;
        Scalar heat;
        for (int j = 0; j < hybrid.N(); ++j)
            heat = heat + local_a(point_at(hybrid, j), l) * scalar_from_rational(rat_factorial(l + 1));
        out = out + heat;
    }
    return out;
}

std::map<int, Scalar> lemma53_printed(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid,
                                      int max_n) {
    check_args(bc, hybrid);
    std::map<int, Scalar> out;
    auto add = [&](int q, const Scalar& v) {
        if (q > max_n || v.is_zero()) return;
        auto it = out.find(q);
        if (it == out.end())
            out.emplace(q, v);
        else
            it->second = it->second + v;
    };
    Scalar pi = scalar_pi();
    Scalar gamma = scalar_gamma();

    for (int j = 0; j < hybrid.N(); ++j) {
        const GluingPointSpec& pt = point_at(hybrid, j);
        const auto& t = bc.points[static_cast<std::size_t>(j)];
        Rational l1 = t.lambda_seg;          // lambda_{i+N,i+N}
        Rational l2 = t.lambda_top;          // lambda_{i,i}
        Rational l3sq = norm_sq(t.lambda_off);  // |lambda_{i,i+N}|^2
        int a_max = static_cast<int>(pt.local_heat.size());

        // 1/z^4 - 2 gamma/z^4 - 4 pi lambda_2/z^4
        add(4, scalar_int(1) - scalar_int(2) * gamma - scalar_int(4) * pi * scalar_from_rational(l2));

        // sum_{n>=1} (2n+1)(n-1)! a_n / z^{2n+4}
        for (int n = 1; n <= a_max && 2 * n + 4 <= max_n; ++n)
            add(2 * n + 4, scalar_from_rational(Rational(2 * n + 1) * rat_factorial(n - 1)) *
                               local_a(pt, n));

        // (2 pi lambda_2 - gamma)(2 pi lambda_3^2/(z^4 lambda_1)) sum_{n>=1} n(n+2)/(z lambda_1)^n
        for (int n = 1; n + 4 <= max_n; ++n)
            add(n + 4, (scalar_int(2) * pi * scalar_from_rational(l2) - gamma) * scalar_int(2) * pi *
                           scalar_from_rational(l3sq * Rational(n) * Rational(n + 2) /
                                                rat_pow(l1, n + 1)));

        // - gamma sum_{n>=1} 2(n+1) n! a_n / z^{2n+4}
        for (int n = 1; n <= a_max && 2 * n + 4 <= max_n; ++n)
            add(2 * n + 4, scalar_int(0) - gamma *
                               scalar_from_rational(Rational(2 * (n + 1)) * rat_factorial(n)) *
                               local_a(pt, n));

        // (2 pi^2 lambda_3^4/(lambda_1^2 z^4)) sum_{n>=1} n(n^2-1)/(z lambda_1)^{n-1}
        for (int n = 2; n + 3 <= max_n; ++n)
            add(n + 3, scalar_int(2) * pi * pi *
                           scalar_from_rational(l3sq * l3sq * Rational(n) *
                                                Rational(n * n - 1) / rat_pow(l1, n + 1)));

        // - 4 pi lambda_2 sum_{n>=1} (n+1) n! a_n / z^{2n+4}
        for (int n = 1; n <= a_max && 2 * n + 4 <= max_n; ++n)
            add(2 * n + 4, scalar_int(0) - scalar_int(4) * pi *
                               scalar_from_rational(l2 * Rational(n + 1) * rat_factorial(n)) *
                               local_a(pt, n));

        // (4 pi lambda_3^2/(z^4 lambda_1)) sum_{n>=0} (n+1)/(z lambda_1)^n
        for (int n = 0; n + 4 <= max_n; ++n)
            add(n + 4, scalar_int(4) * pi *
                           scalar_from_rational(l3sq * Rational(n + 1) / rat_pow(l1, n + 1)));

        // sum_{n>=1} (n-1)! a_n/z^{2n} * sum_{k>=1} (k+1) k! a_k/z^{2k+4}
        for (int n = 1; n <= a_max; ++n)
            for (int k = 1; k <= a_max && 2 * n + 2 * k + 4 <= max_n; ++k)
                add(2 * n + 2 * k + 4,
                    scalar_from_rational(rat_factorial(n - 1) * Rational(k + 1) *
                                         rat_factorial(k)) *
                        local_a(pt, n) * local_a(pt, k));

        // (pi lambda_3^2/(z^4 lambda_1)) * [ three products ]
        Scalar pref = pi * scalar_from_rational(l3sq);
        for (int n = 1; n <= a_max; ++n) {
            if (local_a(pt, n).is_zero()) continue;
            // sum (n-1)! a_n/z^{2n} * sum_{k>=1} k(k+2)/(z lambda_1)^k
            for (int k = 1; 2 * n + k + 4 <= max_n; ++k)
                add(2 * n + k + 4,
                    pref * scalar_from_rational(rat_factorial(n - 1) * Rational(k) *
                                                Rational(k + 2) / rat_pow(l1, k + 1)) *
                        local_a(pt, n));
            // sum 2(2n+1) n! a_n/z^{2n} * sum_{k>=0} 1/(z lambda_1)^k
            for (int k = 0; 2 * n + k + 4 <= max_n; ++k)
                add(2 * n + k + 4,
                    pref * scalar_from_rational(Rational(2 * (2 * n + 1)) * rat_factorial(n) /
                                                rat_pow(l1, k + 1)) *
                        local_a(pt, n));
            // sum 2 n! a_n/z^{2n} * sum_{k>=0} (1+2k)/(z lambda_1)^k
            for (int k = 0; 2 * n + k + 4 <= max_n; ++k)
                add(2 * n + k + 4,
                    pref * scalar_from_rational(Rational(2) * rat_factorial(n) *
                                                Rational(1 + 2 * k) / rat_pow(l1, k + 1)) *
                        local_a(pt, n));
        }
    }
    return out;
}

namespace {

Scalar ratl_constant(const RatL& c) {
    if (c.den.degree() != 0 || c.num.degree() > 0)
        throw ConfigError("lemma_tails_derived: coefficient unexpectedly depends on L");
    return c.num.c.empty() ? Scalar{} : c.num.c[0];
}

void accumulate(std::map<int, Scalar>& into, const PseudoSeries& s, int max_n) {
    for (const auto& [q, c] : s.coeffs) {
        if (q > max_n) continue;
        Scalar v = ratl_constant(c);
        auto it = into.find(q);
        if (it == into.end())
            into.emplace(q, v);
        else
            it->second = it->second + v;
    }
}

}  // namespace

DerivedTails lemma_tails_derived(const SelfAdjointDiagBC& bc, const HybridSpec& hybrid, int max_n) {
    check_args(bc, hybrid);
    DerivedTails out;
    int ord = max_n;
    Scalar pi = scalar_pi();
    Scalar gamma = scalar_gamma();

    // L-free bases.
    for (const auto& m : hybrid.manifolds) accumulate(out.l0, manifold_trace_base(m, ord), max_n);
    for (const auto& s : hybrid.segments)
        accumulate(out.l0, segment_trace_base(s.length, ord), max_n);

    auto quarter = [] { return scalar_from_rational(Rational(1, 4)); };

    for (int j = 0; j < hybrid.N(); ++j) {
        const GluingPointSpec& pt = point_at(hybrid, j);
        const auto& t = bc.points[static_cast<std::size_t>(j)];
        Scalar l1v = scalar_from_rational(t.lambda_seg);
        Scalar l2v = scalar_from_rational(t.lambda_top);
        Scalar l3sq = scalar_from_rational(norm_sq(t.lambda_off));

        // F = -Lambda + A(z); only the Lambda-free parts enter below.
        PseudoSeries a_ser(ord);
        for (int n = 1; 2 * n <= ord; ++n) {
            Scalar an = pt.local_a(n);
            if (an.is_zero()) continue;
            a_ser.set(2 * n, ratl_scalar(scalar_from_rational(rat_factorial(n - 1)) * an *
                                         inv_4pi()));
        }
        Scalar none;  // zero chain: A, F', F'' carry no series variable
        PseudoSeries f1 =
            ps_add(PseudoSeries::monomial(Scalar{} - inv(scalar_int(2) * pi), 1, ord),
                   ps_dz_var(a_ser, none));
        PseudoSeries f2 = ps_dz_var(f1, none);
        PseudoSeries g1 = PseudoSeries::monomial(scalar_int(-1), 2, ord);
        PseudoSeries g2 = PseudoSeries::monomial(scalar_int(2), 3, ord);

        // U = 1/z - lambda_seg;  P = lambda_top - A;  S = U P + lambda_off^2.
        PseudoSeries u = ps_add(PseudoSeries::monomial(scalar_int(1), 1, ord),
                                PseudoSeries::constant(Scalar{} - l1v, ord));
        PseudoSeries p = ps_sub(PseudoSeries::constant(l2v, ord), a_ser);
        PseudoSeries s_ser = ps_add(ps_mul(u, p), PseudoSeries::constant(l3sq, ord));
        PseudoSeries ui = ps_reciprocal(u);
        PseudoSeries ui2 = ps_mul(ui, ui);
        PseudoSeries ui3 = ps_mul(ui2, ui);
        PseudoSeries ui4 = ps_mul(ui2, ui2);

        // Lambda-free part of the point term:
        //   T0 = -G''/(4 z^2 U) + G'/(4 z^3 U) + G'^2/(4 z^2 U^2)
        PseudoSeries t0 = ps_add(
            ps_sub(ps_scale(ps_shift(ps_mul(g1, ui), 3), quarter()),
                   ps_scale(ps_shift(ps_mul(g2, ui), 2), quarter())),
            ps_scale(ps_shift(ps_mul(ps_mul(g1, g1), ui2), 2), quarter()));

        // 1/Lambda coefficient:
        //   T1 = F''/(4 z^2) + G'' l3^2/(4 z^2 U^2) - F'/(4 z^3)
        //        - G' l3^2/(4 z^3 U^2) - G'^2 l3^2/(2 z^2 U^3)
        PseudoSeries t1 = ps_scale(ps_shift(f2, 2), quarter());
        t1 = ps_add(t1, ps_scale(ps_shift(ps_mul(g2, ui2), 2), quarter() * l3sq));
        t1 = ps_sub(t1, ps_scale(ps_shift(f1, 3), quarter()));
        t1 = ps_sub(t1, ps_scale(ps_shift(ps_mul(g1, ui2), 3), quarter() * l3sq));
        t1 = ps_sub(t1, ps_scale(ps_shift(ps_mul(ps_mul(g1, g1), ui3), 2),
                                 inv(scalar_int(2)) * l3sq));

        // 1/Lambda^2 coefficient:
        //   T2 = -F'' S/(4 z^2 U) - G'' l3^2 S/(4 z^2 U^3) + F' S/(4 z^3 U)
        //        + G' l3^2 S/(4 z^3 U^3) + F'^2/(4 z^2) + F' G' l3^2/(2 z^2 U^2)
        //        + G'^2 l3^2 (l3^2 + 2 S)/(4 z^2 U^4)
        PseudoSeries su = ps_mul(s_ser, ui);
        PseudoSeries su3 = ps_mul(s_ser, ui3);
        PseudoSeries t2 = ps_neg(ps_scale(ps_shift(ps_mul(f2, su), 2), quarter()));
        t2 = ps_sub(t2, ps_scale(ps_shift(ps_mul(g2, su3), 2), quarter() * l3sq));
        t2 = ps_add(t2, ps_scale(ps_shift(ps_mul(f1, su), 3), quarter()));
        t2 = ps_add(t2, ps_scale(ps_shift(ps_mul(g1, su3), 3), quarter() * l3sq));
        t2 = ps_add(t2, ps_scale(ps_shift(ps_mul(f1, f1), 2), quarter()));
        t2 = ps_add(t2, ps_scale(ps_shift(ps_mul(ps_mul(f1, g1), ui2), 2),
                                 inv(scalar_int(2)) * l3sq));
        PseudoSeries tail = ps_add(PseudoSeries::constant(l3sq, ord),
                                   ps_scale(s_ser, scalar_int(2)));
        t2 = ps_add(t2, ps_scale(ps_shift(ps_mul(ps_mul(ps_mul(g1, g1), ui4), tail), 2),
                                 quarter() * l3sq));

        // 1/Lambda = 4 pi/L - 8 pi gamma/L^2 + O(L^-3);
        // 1/Lambda^2 = 16 pi^2/L^2 + O(L^-3).
        accumulate(out.l0, t0, max_n);
        accumulate(out.l1, ps_scale(t1, scalar_int(4) * pi), max_n);
        accumulate(out.l2, ps_add(ps_scale(t1, Scalar{} - scalar_int(8) * pi * gamma),
                                  ps_scale(t2, scalar_int(16) * pi * pi)),
                   max_n);
    }
    return out;
}

ClosedFormReport compare_closed_forms(const HybridSpec& hybrid, const SelfAdjointDiagBC& bc,
                                      int max_n) {
    ClosedFormReport report;
    ExpansionResult exp = assemble_trace(hybrid, bc.to_boundary_condition(), max_n);
    std::map<int, Scalar> l2 = lemma53_printed(bc, hybrid, max_n);
    DerivedTails derived = lemma_tails_derived(bc, hybrid, max_n);
    auto derived_at = [](const std::map<int, Scalar>& m, int n) {
        auto it = m.find(n);
        return it == m.end() ? Scalar{} : it->second;
    };

    for (int n = 4; n <= max_n; ++n) {
        LTail tail = ps_l_tail(exp.series.coeff(n), 2);
        Scalar closed[3] = {lemma51_printed(bc, hybrid, n), lemma52_printed(bc, hybrid, n),
                            derived_at(l2, n)};
        Scalar indep[3] = {derived_at(derived.l0, n), derived_at(derived.l1, n),
                           derived_at(derived.l2, n)};
        for (int l = 0; l <= 2; ++l) {
            ClosedFormEntry e;
            e.n = n;
            e.l_order = l;
            e.engine_value = tail.coeffs[static_cast<std::size_t>(l)];
            e.closed_value = closed[l];
            e.match = (e.engine_value == e.closed_value);
            if (!e.match && e.engine_value == indep[l]) {
                // A discrepancy is only whitelisted when the independent
                // re-derivation confirms the engine value exactly.
                e.whitelisted = true;
                if (l == 0)
                    e.note = "printed odd-row exponent 2k+1 is inconsistent with the even rows "
                             "and the power-sum structure; consistent exponent is 2k-3 "
                             "(confirmed by independent re-derivation)";
                else
                    e.note = "printed 1/ln^2 coefficients of the coupling geometric sums and "
                             "of the a_n a_k product term disagree with the value obtained by "
                             "expanding the trace term to second order in 1/Lambda "
                             "(independent re-derivation confirms the engine)";
            }
            if (!e.match && !e.whitelisted) ++report.unexplained_mismatches;
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

}  // namespace hybrid
