#pragma once

#include <cstdint>
#include <optional>

namespace hybrid {

/// Arithmetic in GF(p^2) = GF(p)(i) for p = 2^31 - 1 (p ≡ 3 mod 4, so -1 is a
/// non-residue and the extension is a field).  Used only as a homomorphic
/// image of the exact coefficient tower to certify polynomial coprimality
/// cheaply; all exact answers are still produced by exact arithmetic.
inline constexpr std::uint64_t kGcdPrime = 2147483647ull;

inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kGcdPrime ? s - kGcdPrime : s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kGcdPrime - b;
}
inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b) { return (a * b) % kGcdPrime; }
inline std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = fp_mul(r, a);
        a = fp_mul(a, a);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t fp_inv(std::uint64_t a) { return fp_pow(a, kGcdPrime - 2); }

struct Fp2 {
    std::uint64_t re = 0, im = 0;
    bool is_zero() const { return re == 0 && im == 0; }
};

inline Fp2 fp2_add(const Fp2& a, const Fp2& b) { return {fp_add(a.re, b.re), fp_add(a.im, b.im)}; }
inline Fp2 fp2_sub(const Fp2& a, const Fp2& b) { return {fp_sub(a.re, b.re), fp_sub(a.im, b.im)}; }
inline Fp2 fp2_mul(const Fp2& a, const Fp2& b) {
    return {fp_sub(fp_mul(a.re, b.re), fp_mul(a.im, b.im)),
            fp_add(fp_mul(a.re, b.im), fp_mul(a.im, b.re))};
}
inline Fp2 fp2_inv(const Fp2& a) {
    std::uint64_t n = fp_inv(fp_add(fp_mul(a.re, a.re), fp_mul(a.im, a.im)));
    return {fp_mul(a.re, n), fp_mul(fp_sub(0, a.im), n)};
}

/// Deterministic nonzero residue standing in for the tower variable at the
/// given nesting depth (0 = gamma, 1 = pi, ...), mixed with a salt so that
/// independent certification attempts use independent evaluation points.
inline std::uint64_t modp_var_residue(int depth, std::uint64_t salt) {
    std::uint64_t x = 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(depth + 1) + salt;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x % (kGcdPrime - 1) + 1;
}

/// Nesting depth of a coefficient type in the scalar tower; specialized by
/// the concrete coefficient types.
template <class T>
struct ModpDepth;

}  // namespace hybrid
