#pragma once

#include <complex>
#include <map>

#include "cusptransfer/cusps.hpp"

namespace cusptransfer {

// Backing store of Fourier coefficients A(class, n), either exact synthetic
// data or numerically extracted values.  Also exposes the rescaled view
// B(class, alpha) = A(class, m*alpha - mu) when that index is integral, 0
// otherwise.
class CoefficientView {
public:
    explicit CoefficientView(bool exact = false) : exact_(exact) {}

    void set(int class_id, i64 n, std::complex<double> v) { data_[{class_id, n}] = v; }
    bool has(int class_id, i64 n) const { return data_.count({class_id, n}) > 0; }

    std::complex<double> get(int class_id, i64 n) const {
        auto it = data_.find({class_id, n});
        if (it == data_.end()) throw std::out_of_range("insufficient data");
        return it->second;
    }

    bool is_exact() const { return exact_; }

    // B(a, alpha) per the rescaled coefficient convention.
    std::complex<double> b_value(const CuspClass& cls, const Rational& alpha) const {
        Rational idx = Rational(cls.width) * alpha - cls.mu;
        if (!idx.is_integer()) return 0.0;
        return get(cls.id, idx.num());
    }

    bool b_available(const CuspClass& cls, const Rational& alpha) const {
        Rational idx = Rational(cls.width) * alpha - cls.mu;
        return !idx.is_integer() || has(cls.id, idx.num());
    }

private:
    bool exact_;
    std::map<std::pair<int, i64>, std::complex<double>> data_;
};

}  // namespace cusptransfer
