#pragma once

#include <array>
#include <string>

#include "cusptransfer/rational.hpp"

namespace cusptransfer {

// 2x2 integer matrix (a b; c d).
struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return checked_cast(i128(a) * d - i128(b) * c, "det"); }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.a = checked_cast(i128(a) * o.a + i128(b) * o.c, "matmul");
        r.b = checked_cast(i128(a) * o.b + i128(b) * o.d, "matmul");
        r.c = checked_cast(i128(c) * o.a + i128(d) * o.c, "matmul");
        r.d = checked_cast(i128(c) * o.b + i128(d) * o.d, "matmul");
        return r;
    }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    std::string str() const {
        return "[" + std::to_string(a) + "," + std::to_string(b) + ";" +
               std::to_string(c) + "," + std::to_string(d) + "]";
    }
};

inline Mat2 translation(i64 j) { return Mat2{1, j, 0, 1}; }

// Element of SL(2, Z); the constructor checks the determinant.
struct SL2Z : Mat2 {
    SL2Z() : Mat2{1, 0, 0, 1} {}
    SL2Z(i64 a_, i64 b_, i64 c_, i64 d_) : Mat2{a_, b_, c_, d_} {
        if (det() != 1) throw std::invalid_argument("SL2Z: determinant must be 1");
    }
    explicit SL2Z(const Mat2& m) : Mat2(m) {
        if (det() != 1) throw std::invalid_argument("SL2Z: determinant must be 1");
    }

    SL2Z inverse() const { return SL2Z(d, -b, -c, a); }
    SL2Z operator*(const SL2Z& o) const { return SL2Z(Mat2::operator*(o)); }
};

// 2x2 rational matrix with positive determinant.
struct GL2Q {
    Rational a, b, c, d;

    GL2Q() : a(1), b(0), c(0), d(1) {}
    GL2Q(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if ((a * d - b * c).sign() <= 0)
            throw std::invalid_argument("GL2Q: determinant must be positive");
    }
    explicit GL2Q(const Mat2& m) : GL2Q(Rational(m.a), Rational(m.b), Rational(m.c), Rational(m.d)) {}

    Rational det() const { return a * d - b * c; }

    GL2Q operator*(const GL2Q& o) const {
        return GL2Q(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d);
    }
    GL2Q inverse() const {
        Rational dt = det();
        return GL2Q(d / dt, -b / dt, -c / dt, a / dt);
    }
    bool is_integral() const {
        return a.is_integer() && b.is_integer() && c.is_integer() && d.is_integer();
    }
};

// Completes a coprime pair (c, d) to a determinant-1 matrix with bottom row
// exactly (c, d).  Deterministic: for c != 0 the top-left entry is the least
// nonnegative solution of a*d = 1 (mod |c|); for c = 0 the result is d * I.
inline SL2Z complete_to_sl2(i64 c, i64 d) {
    if (gcd64(c, d) != 1) throw std::invalid_argument("not unimodular row");
    if (c == 0) {
        // d = +-1
        return SL2Z(d, 0, 0, d);
    }
    i64 ac = c < 0 ? -c : c;
    i64 a = ac == 1 ? 0 : mod_reduce(inv_mod(d, ac), ac);
    // b = (a d - 1) / c
    i64 b = checked_cast((i128(a) * d - 1) / c, "complete_to_sl2");
    return SL2Z(a, b, c, d);
}

// Matrix mapping oo to the cusp a/b (first column (a, b)), gcd(a, b) = 1.
// Cusp oo itself is (1, 0).  Deterministic completion of the first column.
inline SL2Z cusp_to_matrix(i64 a, i64 b) {
    if (gcd64(a, b) != 1) throw std::invalid_argument("cusp fraction not reduced");
    if (b == 0) return SL2Z(a, 0, 0, a);  // a = +-1
    // choose (x, y) with a*y - b*x = 1; canonical: y least nonnegative inverse of a mod |b|
    i64 ab = b < 0 ? -b : b;
    i64 y = ab == 1 ? 0 : mod_reduce(inv_mod(a, ab), ab);
    i64 x = checked_cast((i128(a) * y - 1) / b, "cusp_to_matrix");
    return SL2Z(a, x, b, y);
}

}  // namespace cusptransfer
