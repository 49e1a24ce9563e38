#include "hybrid/oracle.hpp"

#include "hybrid/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <vector>

namespace hybrid {

namespace {

using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sinh;
using boost::multiprecision::sqrt;

Real50 rat_factorial_50(int n) {
    Real50 f(1);
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// 20-point Gauss-Legendre nodes/weights on [-1, 1], generated once by
/// Newton iteration on the Legendre recurrence in extended precision.
struct GaussLegendre {
    std::vector<Real50> node, weight;

    GaussLegendre() {
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            Real50 x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
            Real50 dp(0);
            for (int it = 0; it < 80; ++it) {
                Real50 p0(1), p1(0);
                for (int j = 0; j < n; ++j) {
                    Real50 p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
                }
                dp = n * (x * p0 - p1) / (x * x - 1);
                Real50 step = p0 / dp;
                x -= step;
                if (abs(step) < Real50("1e-45")) break;
            }
            node.push_back(x);
            weight.push_back(Real50(2) / ((1 - x * x) * dp * dp));
        }
    }
};

const GaussLegendre& gl20() {
    static const GaussLegendre g;
    return g;
}

/// d/dz of the diagonal Neumann Green function on [0, l]:
/// g(x, x, z) = (cosh(z s) + cosh(z l))/(2 z sinh(z l)), s = 2x - l.
Real50 segment_green_dz(const Real50& x, const Real50& l, const Real50& z) {
    Real50 s = 2 * x - l;
    Real50 shl = sinh(z * l), chl = cosh(z * l);
    Real50 shs = sinh(z * s), chs = cosh(z * s);
    Real50 num = chs + chl;
    return (s * shs + l * shl) / (2 * z * shl) - num * (shl + z * l * chl) / (2 * z * z * shl * shl);
}

Complex50 eval_gq_c(const GQ& g) { return eval_gq(g); }

}  // namespace

Real50 segment_trace_quadrature(const Real50& l, const Real50& z) {
    const auto& gl = gl20();
    int panels = static_cast<int>((z * l / 2).convert_to<double>()) + 4;
    Real50 h = l / panels;
    Real50 acc(0);
    for (int p = 0; p < panels; ++p) {
        Real50 a = p * h;
        for (std::size_t i = 0; i < gl.node.size(); ++i) {
            Real50 x = a + (gl.node[i] + 1) * h / 2;
            acc += gl.weight[i] * segment_green_dz(x, l, z);
        }
    }
    acc *= h / 2;
    return -acc / (2 * z);
}

Real50 eval_thexpan(const HybridSpec& hybrid, const BoundaryCondition& bc, const Real50& z,
                    int f_order) {
    if (bc.N() != hybrid.N())
        throw ConfigError("boundary condition and hybrid disagree on the point count");
    Real50 pi = const_pi_50();
    Real50 gamma = const_euler_gamma_50();
    Real50 acc(0);

    // Manifold base traces: eq (4.3) partial sums.
    for (const auto& m : hybrid.manifolds) {
        for (int k = 0; k <= f_order; ++k) {
            Scalar a = m.global_a(k);
            if (a.is_zero()) continue;
            Real50 av = eval_scalar(a).re;
            Real50 zp(1);
            for (int e = 0; e < 2 * k + 2; ++e) zp *= z;
            acc += av * rat_factorial_50(k) / (4 * pi * zp);
        }
    }

    // Segment base traces by quadrature of the exact Green function.
    std::vector<Real50> seg_len;
    for (const auto& s : hybrid.segments) {
        Real50 l = eval_scalar(s.length).re;
        seg_len.push_back(l);
        acc += segment_trace_quadrature(l, z);
    }

    // Per-point corrections, eq-trz0 with direct complex arithmetic.
    for (int j = 0; j < hybrid.N(); ++j) {
        const PointRef& ref = hybrid.endpoints[static_cast<std::size_t>(j)];
        const GluingPointSpec& pt = hybrid.manifolds[static_cast<std::size_t>(ref.manifold)]
                                        .gluing_points[static_cast<std::size_t>(ref.point)];
        Real50 l = seg_len[static_cast<std::size_t>(j / 2)];

        // Truncated eq-fxx and its exact derivatives.
        Real50 f = (-2 * gamma - 2 * log(z)) / (4 * pi);
        Real50 f1 = -1 / (2 * pi * z);
        Real50 f2 = 1 / (2 * pi * z * z);
        Real50 z2n(1);
        for (int n = 1; n <= f_order; ++n) {
            z2n *= z * z;
            Scalar a = pt.local_a(n);
            if (a.is_zero()) continue;
            Real50 av = eval_scalar(a).re;
            Real50 gn = rat_factorial_50(n - 1);  // Gamma(n)
            f += gn * av / (4 * pi * z2n);
            f1 -= 2 * n * gn * av / (4 * pi * z2n * z);
            f2 += 2 * n * (2 * n + 1) * gn * av / (4 * pi * z2n * z * z);
        }

        // Exact segment Weyl-function entry and derivatives:
        // G = coth(z l)/z with coth' via 1 - coth^2.
        Real50 c = cosh(z * l) / sinh(z * l);
        Real50 g = c / z;
        Real50 g1 = l * (1 - c * c) / z - c / (z * z);
        Real50 g2 = -2 * l * l * c * (1 - c * c) / z - 2 * l * (1 - c * c) / (z * z) +
                    2 * c / (z * z * z);

        const Mat2& A = bc.blocks[static_cast<std::size_t>(j)].A;
        const Mat2& B = bc.blocks[static_cast<std::size_t>(j)].B;
        Complex50 alpha = eval_gq_c(A.b * B.c - A.d * B.a);
        Complex50 beta = eval_gq_c(A.c * B.b - A.a * B.d);
        Complex50 det_a = eval_gq_c(A.det());
        Complex50 det_b = eval_gq_c(B.det());
        Complex50 ww = eval_gq_c((A.b * B.d - A.d * B.b) * (A.c * B.a - A.a * B.c));

        Complex50 fC{f}, gC{g};
        Complex50 x_val = det_b * fC * gC + beta * gC + alpha * fC + det_a;
        Complex50 u = det_b * gC + alpha;
        Complex50 v = det_b * fC + beta;

        Complex50 t1 = -(Complex50{f2} * u + Complex50{g2} * v) / (Complex50{4 * z * z} * x_val);
        Complex50 t2 =
            (Complex50{f1} * u + Complex50{g1} * v) / (Complex50{4 * z * z * z} * x_val);
        Complex50 fu = Complex50{f1} * u;
        Complex50 gv = Complex50{g1} * v;
        Complex50 t3 = (fu * fu + Complex50{2 * f1 * g1} * ww + gv * gv) /
                       (Complex50{4 * z * z} * x_val * x_val);
        acc += (t1 + t2 + t3).re;
    }
    return acc;
}

TorusFDerivatives torus_F_derivative(const std::array<Real50, 2>& v1,
                                     const std::array<Real50, 2>& v2, const Real50& z,
                                     int cutoff) {
    if (cutoff < 1) throw CutoffTooSmall("lattice cutoff must include at least one image shell");
    Real50 pi = const_pi_50();
    TorusFDerivatives out;
    out.f_prime = -1 / (2 * pi * z);
    out.f_second = 1 / (2 * pi * z * z);

    Real50 max_term(0);
    for (int m = -cutoff; m <= cutoff; ++m) {
        for (int n = -cutoff; n <= cutoff; ++n) {
            if (m == 0 && n == 0) continue;
            Real50 vx = m * v1[0] + n * v2[0];
            Real50 vy = m * v1[1] + n * v2[1];
            Real50 r = sqrt(vx * vx + vy * vy);
            Real50 k1 = boost::math::cyl_bessel_k(1, z * r);
            Real50 k0 = boost::math::cyl_bessel_k(0, z * r);
            // d/dz K0(z r) = -r K1(z r);  d/dz [-r K1(z r)] = r^2 (K0 + K1/(z r)).
            out.f_prime -= r * k1 / (2 * pi);
            out.f_second += r * r * (k0 + k1 / (z * r)) / (2 * pi);
            if (std::abs(m) == cutoff || std::abs(n) == cutoff)
                max_term = (std::max)(max_term, Real50(r * r * (k0 + k1))) ;
        }
    }
    // The outermost shell bounds the neglected tail: the kernels decay
    // exponentially in |v|, so the tail is below (number of tail shells is
    // immaterial at these magnitudes) a small multiple of the largest
    // boundary term.
    if (max_term * 100 > Real50("1e-14"))
        throw CutoffTooSmall("lattice cutoff leaves a Bessel tail above 1e-14");
    return out;
}

}  // namespace hybrid
