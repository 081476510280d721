#pragma once

#include <iosfwd>
#include <sstream>
#include <string>

#include "cusptransfer/arith.hpp"

namespace cusptransfer {

// Exact rational with 64-bit parts, always in lowest terms with positive
// denominator.  Intermediate products use 128-bit arithmetic and throw on
// narrowing overflow.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 n) : num_(n), den_(1) {}
    Rational(i64 n, i64 d) { assign(n, d); }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n, b = d;
        while (b) { i128 t = a % b; a = b; b = t; }
        if (a == 0) a = 1;
        Rational r;
        r.num_ = checked_cast(n / a, "Rational");
        r.den_ = checked_cast(d / a, "Rational");
        return r;
    }

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }

    Rational operator+(const Rational& o) const {
        return from_i128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return from_i128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return from_i128(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return i128(num_) * o.den_ < i128(o.num_) * den_;
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // Floor of the rational as an integer.
    i64 floor() const {
        i64 q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    // Fractional part in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        std::ostringstream os;
        os << num_;
        if (den_ != 1) os << '/' << den_;
        return os.str();
    }

private:
    void assign(i64 n, i64 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i64 g = gcd64(n, d);
        if (g == 0) g = 1;
        num_ = n / g;
        den_ = d / g;
    }

    i64 num_;
    i64 den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace cusptransfer
