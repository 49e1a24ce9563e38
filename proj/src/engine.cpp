#include "hybrid/engine.hpp"

#include <vector>

namespace hybrid {

namespace {

Scalar quarter_neg() { return scalar_from_rational(Rational(-1, 4)); }
Scalar quarter() { return scalar_from_rational(Rational(1, 4)); }

Scalar inv_4pi() { return inv(scalar_int(4) * scalar_pi()); }

Rational factorial(int n) {
    Rational f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

Scalar lambda_chain_factor() { return inv(scalar_int(2) * scalar_pi()); }

PseudoSeries lambda_to_L(const PseudoSeries& a) {
    // Lambda = (1/(4*pi)) * L + gamma/(2*pi)
    Scalar s = inv_4pi();
    Scalar t = scalar_gamma() * lambda_chain_factor();
    return ps_affine_sub(a, s, t);
}

PseudoSeries manifold_F_series(const GluingPointSpec& point, int order) {
    PseudoSeries f(order);
    f.set(0, -ratl_L());  // -Lambda
    for (int n = 1; 2 * n <= order; ++n) {
        Scalar a = point.local_a(n);
        if (a.is_zero()) continue;
        f.set(2 * n, ratl_scalar(scalar_from_rational(factorial(n - 1)) * a * inv_4pi()));
    }
    return f;
}

PseudoSeries segment_G_series(int order) {
    PseudoSeries g(order);
    g.set(1, ratl_scalar(scalar_int(1)));
    return g;
}

Real50 segment_G_exact(const Real50& l, const Real50& z) {
    if (z <= 1) throw std::domain_error("segment_G_exact requires z > 1");
    return 1 / (tanh(z * l) * z);
}

PseudoSeries segment_trace_base(const Scalar& length, int order) {
    PseudoSeries s(order);
    s.set(3, ratl_scalar(length * quarter()));
    s.set(4, ratl_scalar(scalar_from_rational(Rational(1, 2))));
    return s;
}

PseudoSeries manifold_trace_base(const ManifoldSpec& manifold, int order) {
    PseudoSeries s(order);
    for (int k = 0; 2 * k + 2 <= order; ++k) {
        Scalar a = manifold.global_a(k);
        if (a.is_zero()) continue;
        s.set(2 * k + 2, ratl_scalar(a * scalar_from_rational(factorial(k)) * inv_4pi()));
    }
    return s;
}

PointData point_xuvw(const BCBlock& block, const PseudoSeries& F, const PseudoSeries& G) {
    const Mat2& A = block.A;
    const Mat2& B = block.B;
    GQ alpha = A.b * B.c - A.d * B.a;  // a_{i,i+N} b_{i+N,i} - a_{i+N,i+N} b_{i,i}
    GQ beta = A.c * B.b - A.a * B.d;   // a_{i+N,i} b_{i,i+N} - a_{i,i} b_{i+N,i+N}
    GQ det_a = A.det();
    GQ det_b = B.det();

    auto cst = [](const GQ& g) { return scalar_from_gq(g); };

    PointData pd;
    pd.F = F;
    pd.G = G;
    pd.X = ps_add(ps_add(ps_scale(ps_mul(F, G), cst(det_b)),
                         ps_add(ps_scale(G, cst(beta)), ps_scale(F, cst(alpha)))),
                  PseudoSeries::constant(cst(det_a), F.order_z));
    pd.U = ps_add(ps_scale(G, cst(det_b)), PseudoSeries::constant(cst(alpha), G.order_z));
    pd.V = ps_add(ps_scale(F, cst(det_b)), PseudoSeries::constant(cst(beta), F.order_z));
    pd.W = A.b * B.d - A.d * B.b;
    pd.W_conj = A.c * B.a - A.a * B.c;

    if (pd.X.coeff(0).is_zero())
        throw DegenerateX("head of X vanishes identically; block should be non-reducible");
    return pd;
}

PseudoSeries point_trace_term(const PointData& data, int order) {
    Scalar chain = lambda_chain_factor();
    PseudoSeries f1 = ps_dz_var(data.F, chain);
    PseudoSeries f2 = ps_dz_var(f1, chain);
    PseudoSeries g1 = ps_dz_var(data.G, chain);
    PseudoSeries g2 = ps_dz_var(g1, chain);

    PseudoSeries x_inv = ps_reciprocal(data.X);
    PseudoSeries f1u = ps_mul(f1, data.U);
    PseudoSeries g1v = ps_mul(g1, data.V);

    // -(F'' U + G'' V) / (4 z^2 X)
    PseudoSeries t1 = ps_scale(
        ps_shift(ps_mul(ps_add(ps_mul(f2, data.U), ps_mul(g2, data.V)), x_inv), 2), quarter_neg());
    // (F' U + G' V) / (4 z^3 X)
    PseudoSeries t2 = ps_scale(ps_shift(ps_mul(ps_add(f1u, g1v), x_inv), 3), quarter());
    // ((F' U)^2 + 2 F' G' W W_conj + (G' V)^2) / (4 z^2 X^2); W W_conj is the
    // scaling-invariant form of the paper's |W|^2.
    PseudoSeries sq =
        ps_add(ps_add(ps_mul(f1u, f1u), ps_mul(g1v, g1v)),
               ps_scale(ps_mul(f1, g1), scalar_from_gq(GQ(2) * data.W * data.W_conj)));
    PseudoSeries t3 =
        ps_scale(ps_shift(ps_mul(ps_mul(sq, x_inv), x_inv), 2), quarter());

    return ps_truncate(ps_add(ps_add(t1, t2), t3), order);
}

ExpansionResult assemble_trace(const HybridSpec& hybrid, const BoundaryCondition& bc, int order,
                               bool parallel) {
    if (bc.N() != hybrid.N())
        throw ConfigError("boundary condition has " + std::to_string(bc.N()) +
                          " blocks but the hybrid has " + std::to_string(hybrid.N()) + " points");

    ExpansionResult out;
    out.order = order;
    out.num_points = hybrid.N();
    out.n_zero = n_zero_count(bc);
    out.sum_vol = Scalar{};
    out.sum_len = Scalar{};
    for (const auto& m : hybrid.manifolds) {
        out.sum_vol = out.sum_vol + m.volume;
        out.sum_euler += m.euler_char;
    }
    for (const auto& s : hybrid.segments) out.sum_len = out.sum_len + s.length;

    PseudoSeries acc(order);
    for (const auto& m : hybrid.manifolds) acc = ps_add(acc, manifold_trace_base(m, order));
    for (const auto& s : hybrid.segments) acc = ps_add(acc, segment_trace_base(s.length, order));

    int n_pts = hybrid.N();
    std::vector<PseudoSeries> terms(static_cast<std::size_t>(n_pts));
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int j = 0; j < n_pts; ++j) {
        try {
            const PointRef& ref = hybrid.endpoints[static_cast<std::size_t>(j)];
            const GluingPointSpec& point =
                hybrid.manifolds[static_cast<std::size_t>(ref.manifold)]
                    .gluing_points[static_cast<std::size_t>(ref.point)];
            PointData pd = point_xuvw(bc.blocks[static_cast<std::size_t>(j)],
                                      manifold_F_series(point, order), segment_G_series(order));
            terms[static_cast<std::size_t>(j)] = point_trace_term(pd, order);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    // Fixed-order reduction keeps the output bit-identical across schedules.
    for (const auto& t : terms) acc = ps_add(acc, t);

    out.series = lambda_to_L(acc);
    return out;
}

}  // namespace hybrid
