#include "hybrid/inverse.hpp"

#include "hybrid/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>

namespace hybrid {

namespace {

bool ratl_l_dependent(const RatL& c) { return c.num.degree() > 0 || c.den.degree() > 0; }

Scalar ratl_l_free_value(const RatL& c, const char* what) {
    if (ratl_l_dependent(c))
        throw MalformedSeries(std::string(what) + " is L-dependent");
    return c.num.c.empty() ? Scalar{} : c.num.c[0];
}

Real50 scalar_real50(const Scalar& s) {
    Complex50 v = eval_scalar(s);
    if (abs(Complex50{Real50(0), v.im}) > Real50("1e-35") * (Real50(1) + abs(v)))
        throw MalformedSeries("expected a real scalar in the inverse pipeline");
    return v.re;
}

Scalar tail_coeff(const PseudoSeries& series, int q, int l) {
    LTail tail = ps_l_tail(series.coeff(q), l);
    return tail.coeffs[static_cast<std::size_t>(l)];
}

/// L-basis trace contribution of one gluing point under a section-5 triple.
PseudoSeries point_term_L(const GluingPointSpec& pt, const Rational& l_top, const GQ& l_off,
                          const Rational& l_seg, int order) {
    BCBlock block;
    block.A = Mat2(GQ(l_top), l_off, conj(l_off), GQ(l_seg));
    block.B = Mat2::identity();
    PointData pd = point_xuvw(block, manifold_F_series(pt, order), segment_G_series(order));
    return lambda_to_L(point_trace_term(pd, order));
}

/// Manifold base contributions to the L-free parts (segment bases stop at
/// q = 4 and never enter the q >= 5 rows used below).
Scalar manifold_base_const(const HybridSpec& hybrid, int q, int order) {
    Scalar out;
    for (const auto& m : hybrid.manifolds) {
        PseudoSeries base = manifold_trace_base(m, order);
        out = out + ratl_l_free_value(base.coeff(q), "manifold base coefficient");
    }
    return out;
}

int series_n_from_c4(const PseudoSeries& series) {
    Scalar n_scalar = tail_coeff(series, 4, 1);
    auto n_rat = scalar_as_rational(n_scalar);
    if (!n_rat || denominator(*n_rat) != 1)
        throw MalformedSeries("1/(z^4 L) coefficient is not an integer");
    auto n_big = numerator(*n_rat);
    if (n_big < 0 || n_big > 1000) throw MalformedSeries("implausible point count in c_4");
    return n_big.convert_to<int>();
}

void require_order(const PseudoSeries& series, int needed) {
    if (series.order_z < needed)
        throw MalformedSeries("series order " + std::to_string(series.order_z) +
                              " too small; need " + std::to_string(needed));
}

void check_heat_data(const HybridSpec& heat_data, int n_points) {
    if (heat_data.N() != n_points)
        throw ConfigError("heat data describes " + std::to_string(heat_data.N()) +
                          " points but the series reports " + std::to_string(n_points));
}

/// Least-squares solve of an m x n (m >= n) system in extended precision via
/// normal equations with partial-pivot Gaussian elimination; the condition
/// number of the rectangular matrix is estimated in double via SVD for the
/// diagnostics.  Using every available coefficient row (rather than a square
/// selection) keeps the system well posed when individual rows degenerate,
/// e.g. the 1/L^2 row at q = 5 when all off-diagonal couplings vanish.
std::vector<Real50> solve_least_squares(const std::vector<std::vector<Real50>>& a,
                                        const std::vector<Real50>& b, StageDiagnostics* diag) {
    const std::size_t m = b.size();
    const std::size_t n = a.empty() ? 0 : a[0].size();
    Eigen::MatrixXd ad(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                a[i][j].convert_to<double>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad);
    double smin = svd.singularValues()(static_cast<Eigen::Index>(n) - 1);
    double smax = svd.singularValues()(0);
    double cond = (smin > 0) ? smax / smin : std::numeric_limits<double>::infinity();
    if (diag) {
        diag->condition = Real50(cond);
        if (cond > 1e8 && diag->status == "ok")
            diag->status = "warning: condition number above 1e8";
    }
    if (!(smin > smax * 1e-13))
        throw IllConditioned("linear system numerically singular; condition ~" +
                             std::to_string(cond));

    // Normal equations G x = r; the 50-digit working precision absorbs the
    // squared conditioning comfortably below the 1e-6 reporting tolerance.
    std::vector<std::vector<Real50>> g(n, std::vector<Real50>(n, Real50(0)));
    std::vector<Real50> r(n, Real50(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k) g[i][j] += a[k][i] * a[k][j];
        for (std::size_t k = 0; k < m; ++k) r[i] += a[k][i] * b[k];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (abs(g[row][col]) > abs(g[piv][col])) piv = row;
        std::swap(g[col], g[piv]);
        std::swap(r[col], r[piv]);
        if (g[col][col] == 0) throw IllConditioned("zero pivot in linear solve");
        for (std::size_t row = col + 1; row < n; ++row) {
            Real50 f = g[row][col] / g[col][col];
            for (std::size_t j = col; j < n; ++j) g[row][j] -= f * g[col][j];
            r[row] -= f * r[col];
        }
    }
    std::vector<Real50> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real50 s = r[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= g[i][j] * x[j];
        x[i] = s / g[i][i];
    }
    return x;
}

/// Rounds a recovered value to a 64-bit-mantissa dyadic rational before it
/// feeds an exact-arithmetic engine probe.  Full 50-digit dyadic rationals
/// make the probe coefficients explode in size while adding nothing below
/// the 1e-6 reporting tolerance (the rounding perturbs the linear systems
/// relatively by ~1e-19, far inside the solve's error budget).
Rational probe_rational(const Real50& x, int bits = 64) {
    if (x == 0) return Rational(0);
    using boost::multiprecision::frexp;
    using boost::multiprecision::ldexp;
    int e = 0;
    Real50 m = frexp(x, &e);  // |m| in [1/2, 1)
    BigInt n = ldexp(m, bits).convert_to<BigInt>();
    Rational r(n);
    int shift = bits - e;
    BigInt p2 = BigInt(1) << std::abs(shift);
    return shift >= 0 ? r / Rational(p2) : r * Rational(p2);
}

Real50 ls_residual(const std::vector<std::vector<Real50>>& a, const std::vector<Real50>& b,
                   const std::vector<Real50>& x) {
    Real50 acc(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        Real50 r = b[i];
        for (std::size_t j = 0; j < x.size(); ++j) r -= a[i][j] * x[j];
        acc += r * r;
    }
    using boost::multiprecision::sqrt;
    return sqrt(acc);
}

const GluingPointSpec& endpoint_heat(const HybridSpec& heat_data, int i) {
    const PointRef& ref = heat_data.endpoints[static_cast<std::size_t>(i)];
    return heat_data.manifolds[static_cast<std::size_t>(ref.manifold)]
        .gluing_points[static_cast<std::size_t>(ref.point)];
}

/// Which endpoint's heat data belongs to which recovered lambda slot
/// (lambda_seg is sorted ascending, heat_data lists endpoints in model
/// order)?  Only the 1/L^2 rows carry that information: the constant rows
/// are heat-free and the 1/L rows see the heat data as a pairing-invariant
/// sum.  Each candidate assignment is scored by the residual of a cheap
/// low-order least-squares solve for lambda_top; the minimizer wins.
/// Returns perm with perm[j] = endpoint index feeding slot j.
std::vector<int> resolve_heat_pairing(const PseudoSeries& series, const HybridSpec& heat_data,
                                      const std::vector<Real50>& lambda_seg,
                                      const std::vector<Real50>& lambda_off_abs) {
    const int n_pts = static_cast<int>(lambda_seg.size());
    std::vector<int> identity(static_cast<std::size_t>(n_pts));
    for (int i = 0; i < n_pts; ++i) identity[static_cast<std::size_t>(i)] = i;
    if (n_pts <= 1) return identity;

    bool all_same = true;
    for (int i = 1; i < n_pts && all_same; ++i)
        all_same = endpoint_heat(heat_data, i).local_heat ==
                   endpoint_heat(heat_data, 0).local_heat;
    if (all_same) return identity;

    const int probe_order = std::min(series.order_z, n_pts + 5);
    const int n_rows = probe_order - 3;  // rows q = 4..probe_order
    std::vector<Real50> rhs0(static_cast<std::size_t>(n_rows));
    for (int n = 0; n < n_rows; ++n)
        rhs0[static_cast<std::size_t>(n)] = scalar_real50(tail_coeff(series, n + 4, 2));

    // bases[i][j][n], slopes[i][j][n]: endpoint i's heat data in lambda slot j.
    auto cube = [&] {
        return std::vector<std::vector<std::vector<Real50>>>(
            static_cast<std::size_t>(n_pts),
            std::vector<std::vector<Real50>>(static_cast<std::size_t>(n_pts),
                                             std::vector<Real50>(static_cast<std::size_t>(n_rows))));
    };
    auto bases = cube();
    auto slopes = cube();
    for (int i = 0; i < n_pts; ++i) {
        const GluingPointSpec& pt = endpoint_heat(heat_data, i);
        for (int j = 0; j < n_pts; ++j) {
            // 32-bit probes: the search only has to separate residuals that
            // differ at the scale of the heat data itself.
            Rational l_seg = probe_rational(lambda_seg[static_cast<std::size_t>(j)], 32);
            GQ l_off = GQ(probe_rational(lambda_off_abs[static_cast<std::size_t>(j)], 32));
            PseudoSeries base = point_term_L(pt, Rational(0), l_off, l_seg, probe_order);
            PseudoSeries unit = point_term_L(pt, Rational(1), l_off, l_seg, probe_order);
            for (int n = 0; n < n_rows; ++n) {
                Scalar b = tail_coeff(base, n + 4, 2);
                Scalar u = tail_coeff(unit, n + 4, 2);
                bases[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                     [static_cast<std::size_t>(n)] = scalar_real50(b);
                slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      [static_cast<std::size_t>(n)] = scalar_real50(u - b);
            }
        }
    }

    std::vector<int> perm = identity, best = identity;
    Real50 best_res(-1);
    do {
        std::vector<std::vector<Real50>> mat(static_cast<std::size_t>(n_rows),
                                             std::vector<Real50>(static_cast<std::size_t>(n_pts)));
        std::vector<Real50> rhs = rhs0;
        for (int n = 0; n < n_rows; ++n)
            for (int j = 0; j < n_pts; ++j) {
                std::size_t i = static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]);
                mat[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] =
                    slopes[i][static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
                rhs[static_cast<std::size_t>(n)] -=
                    bases[i][static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
            }
        try {
            std::vector<Real50> x = solve_least_squares(mat, rhs, nullptr);
            Real50 res = ls_residual(mat, rhs, x);
            if (best_res < 0 || res < best_res) {
                best_res = res;
                best = perm;
            }
        } catch (const IllConditioned&) {
            // A degenerate candidate assignment cannot win.
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

bool detect_hybrid(const PseudoSeries& series) {
    for (const auto& [q, c] : series.coeffs)
        if (ratl_l_dependent(c)) return true;
    return false;
}

InverseReport recover_geometry(const PseudoSeries& series) {
    require_order(series, 4);
    InverseReport rep;
    rep.is_hybrid = detect_hybrid(series);

    Scalar c2 = ratl_l_free_value(series.coeff(2), "c_2");
    Scalar c3 = ratl_l_free_value(series.coeff(3), "c_3");
    rep.sum_vol = scalar_int(4) * scalar_pi() * c2;
    rep.sum_len = scalar_int(4) * c3;

    int n_points = series_n_from_c4(series);
    if (n_points % 2 != 0) throw MalformedSeries("odd number of segment endpoints in c_4");
    rep.n_segments = n_points / 2;

    Scalar c4_limit = tail_coeff(series, 4, 0);
    Scalar chi6 = scalar_int(6) * (c4_limit - scalar_from_rational(Rational(n_points, 4)));
    auto chi = scalar_as_rational(chi6);
    if (!chi || denominator(*chi) != 1)
        throw MalformedSeries("6*(lim c_4 - N/4) is not an integer Euler characteristic");
    rep.sum_euler = numerator(*chi).convert_to<long>();
    rep.euler_hybrid = rep.sum_euler - n_points;

    rep.conditioning.push_back({"geometry", "ok", Real50(0), Real50(0)});
    return rep;
}

std::vector<Real50> recover_lambda_seg(const PseudoSeries& series, const HybridSpec& heat_data,
                                       StageDiagnostics* diag) {
    int n_pts = series_n_from_c4(series);
    check_heat_data(heat_data, n_pts);
    if (n_pts == 0) return {};
    int order = n_pts + 4;
    require_order(series, order);
    if (diag) *diag = {"lambda_seg", "ok", Real50(0), Real50(0)};

    // Probe the engine for the per-point L-free map phi_n(lambda): with a
    // trivial triple (0, 0, lambda) the point term's constant part depends on
    // lambda_seg alone.  Two probes certify the pure-power structure
    // phi_n(lambda) = phi_n(1)/lambda^n instead of trusting the printed rows.
    GluingPointSpec plain;  // heat-free probe point: constants carry no local heat
    PseudoSeries probe1 = point_term_L(plain, Rational(0), GQ(0), Rational(1), order);
    PseudoSeries probe2 = point_term_L(plain, Rational(0), GQ(0), Rational(2), order);

    // Exact power sums p_n = sum_i x_i^n, x_i = 1/lambda_{i+N,i+N}.
    std::vector<Rational> p(static_cast<std::size_t>(n_pts) + 1, Rational(0));
    for (int n = 1; n <= n_pts; ++n) {
        int q = n + 4;
        Scalar phi1 = ratl_l_free_value(probe1.coeff(q), "probe coefficient");
        Scalar phi2 = ratl_l_free_value(probe2.coeff(q), "probe coefficient");
        Rational two_n = Rational(1);
        for (int k = 0; k < n; ++k) two_n *= 2;
        if (phi1 != phi2 * scalar_from_rational(two_n) || phi1.is_zero())
            throw MalformedSeries("engine probe violates the pure-power constant-part structure");
        Scalar obs = tail_coeff(series, q, 0) - manifold_base_const(heat_data, q, order);
        auto pn = scalar_as_rational(obs * inv(phi1));
        if (!pn) throw MalformedSeries("power sum d_" + std::to_string(q) + " is not rational");
        p[static_cast<std::size_t>(n)] = *pn;
    }

    // Newton's identities: k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j.
    std::vector<Rational> e(static_cast<std::size_t>(n_pts) + 1, Rational(0));
    e[0] = Rational(1);
    for (int k = 1; k <= n_pts; ++k) {
        Rational s(0);
        for (int j = 1; j <= k; ++j) {
            Rational term = e[static_cast<std::size_t>(k - j)] * p[static_cast<std::size_t>(j)];
            if (j % 2 == 0) term = -term;
            s += term;
        }
        e[static_cast<std::size_t>(k)] = s / k;
    }

    // Viete polynomial x^N - e_1 x^{N-1} + ... +- e_N; monomial coefficients
    // coeff[j] of x^j.
    std::vector<Real50> coeff(static_cast<std::size_t>(n_pts) + 1);
    for (int j = 0; j <= n_pts; ++j) {
        Rational c = e[static_cast<std::size_t>(n_pts - j)];
        if ((n_pts - j) % 2 == 1) c = -c;
        coeff[static_cast<std::size_t>(j)] = to_real50(c);
    }

    // Companion-matrix start in double precision...
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n_pts, n_pts);
    for (int r = 1; r < n_pts; ++r) comp(r, r - 1) = 1.0;
    for (int r = 0; r < n_pts; ++r)
        comp(r, n_pts - 1) = -coeff[static_cast<std::size_t>(r)].convert_to<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);

    // ... then Newton polish in extended precision.
    auto poly_at = [&](const Complex50& x) {
        Complex50 v{Real50(0), Real50(0)};
        for (int j = n_pts; j >= 0; --j) v = v * x + Complex50(coeff[static_cast<std::size_t>(j)]);
        return v;
    };
    auto dpoly_at = [&](const Complex50& x) {
        Complex50 v{Real50(0), Real50(0)};
        for (int j = n_pts; j >= 1; --j)
            v = v * x + Complex50(Real50(j) * coeff[static_cast<std::size_t>(j)]);
        return v;
    };
    Real50 coeff_norm(0);
    for (const auto& c : coeff) coeff_norm = (std::max)(coeff_norm, Real50(abs(c)));
    std::vector<Complex50> roots;
    Real50 worst_residual(0);
    for (int r = 0; r < n_pts; ++r) {
        std::complex<double> x0 = es.eigenvalues()(r);
        Complex50 x{Real50(x0.real()), Real50(x0.imag())};
        for (int it = 0; it < 100; ++it) {
            Complex50 d = dpoly_at(x);
            if (abs(d) == 0) break;
            Complex50 step = poly_at(x) / d;
            x -= step;
            if (abs(step) < Real50("1e-45") * (Real50(1) + abs(x))) break;
        }
        worst_residual = (std::max)(worst_residual, abs(poly_at(x)));
        roots.push_back(x);
    }
    if (diag) diag->residual = worst_residual;
    if (worst_residual > Real50("1e-9") * coeff_norm)
        throw ResidualTooLarge("polynomial residual exceeds 1e-9 * max|coeff|");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (abs(Complex50{Real50(0), roots[i].im}) >
            Real50("1e-8") * (Real50(1) + abs(roots[i])))
            throw RepeatedRoots("complex root pair: power-sum data inconsistent with "
                                "distinct real lambda values");
        for (std::size_t j = 0; j < i; ++j)
            if (abs(roots[i] - roots[j]) < Real50("1e-7") * (Real50(1) + abs(roots[i])))
                throw RepeatedRoots("lambda values not mutually distinct");
    }

    std::vector<Real50> lambda;
    for (const auto& r : roots) {
        if (abs(r) == 0) throw MalformedSeries("zero root: infinite lambda");
        lambda.push_back(Real50(1) / r.re);
    }
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

std::vector<Real50> recover_lambda_off(const PseudoSeries& series, const HybridSpec& heat_data,
                                       const std::vector<Real50>& lambda_seg,
                                       StageDiagnostics* diag) {
    const int n_pts = static_cast<int>(lambda_seg.size());
    check_heat_data(heat_data, n_pts);
    if (n_pts == 0) return {};
    require_order(series, n_pts + 4);
    int order = series.order_z;
    if (diag) *diag = {"lambda_off", "ok", Real50(0), Real50(0)};

    // The 1/L part of each point term is affine in y_i = |lambda_off,i|^2
    // with slope independent of lambda_top; probe slope and offset per point at the
    // recovered (dyadic-rational) lambda_seg values.  All rows q = 5..order
    // enter a least-squares system.  The heat data enters these rows only
    // through the lambda-free base terms, whose sum does not depend on which
    // endpoint's heat goes with which lambda slot, so no pairing resolution
    // is needed at this stage (unlike the 1/L^2 stage below).
    const int n_rows = order - 4;
    std::vector<std::vector<Real50>> mat(static_cast<std::size_t>(n_rows),
                                         std::vector<Real50>(static_cast<std::size_t>(n_pts)));
    std::vector<Real50> rhs(static_cast<std::size_t>(n_rows));
    for (int n = 0; n < n_rows; ++n)
        rhs[static_cast<std::size_t>(n)] = scalar_real50(tail_coeff(series, n + 5, 1));
    for (int i = 0; i < n_pts; ++i) {
        const GluingPointSpec& pt =
            heat_data.manifolds[static_cast<std::size_t>(
                                    heat_data.endpoints[static_cast<std::size_t>(i)].manifold)]
                .gluing_points[static_cast<std::size_t>(
                    heat_data.endpoints[static_cast<std::size_t>(i)].point)];
        Rational l_seg = probe_rational(lambda_seg[static_cast<std::size_t>(i)]);
        PseudoSeries base = point_term_L(pt, Rational(0), GQ(0), l_seg, order);
        PseudoSeries unit = point_term_L(pt, Rational(0), GQ(1), l_seg, order);
        for (int n = 0; n < n_rows; ++n) {
            Scalar b = tail_coeff(base, n + 5, 1);
            Scalar u = tail_coeff(unit, n + 5, 1);
            rhs[static_cast<std::size_t>(n)] -= scalar_real50(b);
            mat[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                scalar_real50(u - b);
        }
    }

    std::vector<Real50> y = solve_least_squares(mat, rhs, diag);
    std::vector<Real50> out;
    for (auto& v : y) {
        if (v < Real50("-1e-6"))
            throw NegativeSquare("solved |lambda_off|^2 is negative beyond tolerance");
        using boost::multiprecision::sqrt;
        // Solver noise around zero reports as an exactly-zero coupling.
        out.push_back(v > Real50("1e-12") ? Real50(sqrt(v)) : Real50(0));
    }
    return out;
}

std::vector<Real50> recover_lambda_top(const PseudoSeries& series, const HybridSpec& heat_data,
                                       const std::vector<Real50>& lambda_seg,
                                       const std::vector<Real50>& lambda_off_abs,
                                       StageDiagnostics* diag) {
    const int n_pts = static_cast<int>(lambda_seg.size());
    check_heat_data(heat_data, n_pts);
    if (lambda_off_abs.size() != lambda_seg.size())
        throw ConfigError("lambda_off_abs and lambda_seg sizes differ");
    if (n_pts == 0) return {};
    require_order(series, n_pts + 3);
    int order = series.order_z;
    if (diag) *diag = {"lambda_top", "ok", Real50(0), Real50(0)};

    // The 1/L^2 part of each point term is affine in lambda_top,i (the Lemma
    // 5.3 structure); probe offset and slope per point.  All rows q = 4..order
    // enter a least-squares system.
    const int n_rows = order - 3;
    std::vector<std::vector<Real50>> mat(static_cast<std::size_t>(n_rows),
                                         std::vector<Real50>(static_cast<std::size_t>(n_pts)));
    std::vector<Real50> rhs(static_cast<std::size_t>(n_rows));
    for (int n = 0; n < n_rows; ++n)
        rhs[static_cast<std::size_t>(n)] = scalar_real50(tail_coeff(series, n + 4, 2));
    std::vector<int> perm = resolve_heat_pairing(series, heat_data, lambda_seg, lambda_off_abs);
    for (int i = 0; i < n_pts; ++i) {
        const GluingPointSpec& pt = endpoint_heat(heat_data, perm[static_cast<std::size_t>(i)]);
        Rational l_seg = probe_rational(lambda_seg[static_cast<std::size_t>(i)]);
        GQ l_off = GQ(probe_rational(lambda_off_abs[static_cast<std::size_t>(i)]));
        PseudoSeries base = point_term_L(pt, Rational(0), l_off, l_seg, order);
        PseudoSeries unit = point_term_L(pt, Rational(1), l_off, l_seg, order);
        for (int n = 0; n < n_rows; ++n) {
            Scalar b = tail_coeff(base, n + 4, 2);
            Scalar u = tail_coeff(unit, n + 4, 2);
            rhs[static_cast<std::size_t>(n)] -= scalar_real50(b);
            mat[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] =
                scalar_real50(u - b);
        }
    }
    return solve_least_squares(mat, rhs, diag);
}

InverseReport invert(const PseudoSeries& series, const HybridSpec& heat_data) {
    InverseReport rep = recover_geometry(series);
    if (!rep.is_hybrid || rep.n_segments == 0) {
        rep.conditioning.push_back(
            {"lambda_seg", "skipped: no segment endpoints", Real50(0), Real50(0)});
        rep.conditioning.push_back(
            {"lambda_off", "skipped: no segment endpoints", Real50(0), Real50(0)});
        rep.conditioning.push_back(
            {"lambda_top", "skipped: no segment endpoints", Real50(0), Real50(0)});
        return rep;
    }
    StageDiagnostics d_seg, d_off, d_top;
    rep.lambda_seg = recover_lambda_seg(series, heat_data, &d_seg);
    rep.lambda_off_abs = recover_lambda_off(series, heat_data, rep.lambda_seg, &d_off);
    rep.lambda_top =
        recover_lambda_top(series, heat_data, rep.lambda_seg, rep.lambda_off_abs, &d_top);
    rep.conditioning.push_back(d_seg);
    rep.conditioning.push_back(d_off);
    rep.conditioning.push_back(d_top);
    return rep;
}

}  // namespace hybrid
