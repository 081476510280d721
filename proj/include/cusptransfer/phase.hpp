#pragma once

#include <complex>
#include <cmath>

#include "cusptransfer/rational.hpp"

namespace cusptransfer {

// A root of unity e^{2 pi i r} stored as the exact exponent r in Q/Z,
// reduced into [0, 1).  The group law is addition of exponents mod 1.
class PhaseQZ {
public:
    PhaseQZ() : r_() {}
    explicit PhaseQZ(const Rational& r) : r_(r.frac()) {}

    static PhaseQZ of(i64 num, i64 den) { return PhaseQZ(Rational(num, den)); }

    const Rational& exponent() const { return r_; }
    bool is_one() const { return r_.is_zero(); }

    PhaseQZ operator*(const PhaseQZ& o) const { return PhaseQZ(r_ + o.r_); }
    PhaseQZ inverse() const { return PhaseQZ(-r_); }
    PhaseQZ pow(i64 k) const { return PhaseQZ(r_ * Rational(k)); }

    bool operator==(const PhaseQZ& o) const { return r_ == o.r_; }
    bool operator!=(const PhaseQZ& o) const { return !(*this == o); }
    bool operator<(const PhaseQZ& o) const { return r_ < o.r_; }

    std::complex<double> to_complex() const {
        double t = 2.0 * M_PI * r_.to_double();
        return { std::cos(t), std::sin(t) };
    }

    std::string str() const { return r_.str(); }

private:
    Rational r_;
};

// e_oo(x) = e^{2 pi i x} for rational x.
inline PhaseQZ phase_of_rational(const Rational& x) { return PhaseQZ(x); }

// A Dirichlet character value: either zero (argument shares a factor with the
// modulus) or an exact root of unity.
class UnitValue {
public:
    UnitValue() : zero_(true) {}
    explicit UnitValue(const PhaseQZ& p) : zero_(false), phase_(p) {}

    static UnitValue zero() { return UnitValue(); }
    static UnitValue one() { return UnitValue(PhaseQZ()); }

    bool is_zero() const { return zero_; }
    const PhaseQZ& phase() const {
        if (zero_) throw std::domain_error("UnitValue: zero has no phase");
        return phase_;
    }

    UnitValue operator*(const UnitValue& o) const {
        if (zero_ || o.zero_) return zero();
        return UnitValue(phase_ * o.phase_);
    }
    UnitValue inverse() const {
        if (zero_) throw std::domain_error("UnitValue: zero is not invertible");
        return UnitValue(phase_.inverse());
    }
    UnitValue pow(i64 k) const {
        if (zero_) {
            if (k <= 0) throw std::domain_error("UnitValue: zero to nonpositive power");
            return zero();
        }
        return UnitValue(phase_.pow(k));
    }

    bool operator==(const UnitValue& o) const {
        if (zero_ != o.zero_) return false;
        return zero_ || phase_ == o.phase_;
    }
    bool operator!=(const UnitValue& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        return zero_ ? std::complex<double>(0.0, 0.0) : phase_.to_complex();
    }

private:
    bool zero_;
    PhaseQZ phase_;
};

}  // namespace cusptransfer
