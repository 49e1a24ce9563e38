#pragma once

#include "hybrid/gq.hpp"

namespace hybrid {

/// 2x2 matrix over the Gaussian rationals, laid out as
///   [ a  b ]
///   [ c  d ].
struct Mat2 {
    GQ a, b, c, d;

    Mat2() = default;
    Mat2(GQ a_, GQ b_, GQ c_, GQ d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return Mat2(GQ(1), GQ(0), GQ(0), GQ(1)); }
    static Mat2 zero() { return Mat2(); }

    Mat2 operator+(const Mat2& o) const { return Mat2(a + o.a, b + o.b, c + o.c, d + o.d); }
    Mat2 operator-(const Mat2& o) const { return Mat2(a - o.a, b - o.b, c - o.c, d - o.d); }
    Mat2 operator*(const Mat2& o) const {
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d);
    }
    Mat2 operator*(const GQ& s) const { return Mat2(a * s, b * s, c * s, d * s); }

    GQ det() const { return a * d - b * c; }
    GQ trace() const { return a + d; }

    /// Conjugate transpose.
    Mat2 adjoint() const { return Mat2(conj(a), conj(c), conj(b), conj(d)); }

    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    bool is_hermitian() const { return *this == adjoint(); }

    Mat2 inverse() const {
        GQ dt = det();
        if (dt.is_zero()) throw std::domain_error("Mat2::inverse: singular matrix");
        GQ s = inv(dt);
        return Mat2(d * s, (-b) * s, (-c) * s, a * s);
    }
};

inline Mat2 operator*(const GQ& s, const Mat2& m) { return m * s; }

}  // namespace hybrid
