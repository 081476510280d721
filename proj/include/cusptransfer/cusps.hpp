#pragma once

#include <map>
#include <string>
#include <vector>

#include "cusptransfer/dirichlet.hpp"
#include "cusptransfer/mat.hpp"

namespace cusptransfer {

// Cusp of Gamma_0(q^e) seen at one prime: oo, 0, or 1/(c1 q^l).
enum class CuspType { Infinity, Zero, Intermediate };

struct PrimeTag {
    i64 q = 0;
    i64 e = 0;
    CuspType type = CuspType::Infinity;
    i64 l = 0;    // only for Intermediate
    i64 c1 = 0;   // only for Intermediate, 1 <= c1 < min(q^l, q^{e-l}), gcd(c1,q)=1

    i64 width() const {
        switch (type) {
            case CuspType::Infinity: return 1;
            case CuspType::Zero: return ipow(q, e);
            case CuspType::Intermediate: return e - 2 * l > 0 ? ipow(q, e - 2 * l) : 1;
        }
        return 1;
    }

    // Bottom row of the standard representative mod q^e.
    std::pair<i64, i64> bottom_row() const {
        switch (type) {
            case CuspType::Infinity: return {0, 1};
            case CuspType::Zero: return {1, 0};
            case CuspType::Intermediate: return {c1 * ipow(q, l), 1};
        }
        return {0, 1};
    }

    std::string str() const;
};

// Canonical representative of a Gamma_0(N)-class of cusps, with the fixed
// scaling data used to define Fourier coefficients.
struct CuspClass {
    int id = 0;
    std::pair<i64, i64> key;       // canonical orbit key of the bottom row
    SL2Z gamma;                    // gamma_a, maps oo to the cusp
    i64 width = 1;                 // m_a
    Rational mu;                   // cusp parameter in [0, 1)
    std::vector<PrimeTag> tags;    // one per prime dividing N
    i64 repr_num = 1, repr_den = 0;  // the cusp gamma_a(oo) as a fraction, oo = 1/0

    std::string repr() const;      // "inf", "0", or "a/b"
};

struct CuspReduction {
    int class_id = 0;
    SL2Z gamma0;        // in Gamma_0(N)
    i64 j = 0;          // 0 <= j < width
    UnitValue chi_gamma0;
    i64 width = 1;
    Rational mu;
};

class CuspTable {
public:
    CuspTable(i64 level, DirichletCharacter chi);

    i64 level() const { return level_; }
    const DirichletCharacter& character() const { return chi_; }
    const std::vector<CuspClass>& classes() const { return classes_; }
    const CuspClass& cls(int id) const { return classes_.at(size_t(id)); }
    size_t size() const { return classes_.size(); }

    // Class of the P^1(Z/N) point [c : d].
    int class_of_point(i64 c, i64 d) const;

    // Class and exact reduction data of an arbitrary cusp a/b (b = 0 for oo).
    CuspReduction reduce(i64 a, i64 b) const;

    // Action of a unit a mod N on cusp classes: [c : d] -> [a c : d].
    int unit_action(i64 a, int class_id) const;

    // Least nonnegative canonical key of the (scalar x translation)-orbit of (c, d).
    std::pair<i64, i64> canonical_key(i64 c, i64 d) const;

    // Index [SL2(Z) : Gamma_0(N)] = sum of widths.
    i64 psi() const;

private:
    i64 level_;
    DirichletCharacter chi_;
    std::vector<CuspClass> classes_;
    std::map<std::pair<i64, i64>, int> lookup_;
    std::vector<i64> units_;  // units mod N, for key canonicalization
};

// Representatives for the cusps of Gamma_0(q^e):
// {oo, 0} and 1/(c1 q^l) for 1 <= l < e, gcd(c1, q) = 1, 1 <= c1 < min(q^l, q^{e-l}).
std::vector<PrimeTag> enumerate_prime_power(i64 q, i64 e);

// Cusp parameter of 1/(c1 q^l) for a character mod q^e, via the conductor:
// zero when max(q^l, q^{e-l}) >= q^{e0}, else r / q^{e0 - max(l, e-l)}.
Rational cusp_parameter_prime_power(i64 q, i64 e, i64 l, i64 c1, const DirichletCharacter& chi);

// mu as a direct evaluation of chi-tilde on g_a = gamma (1,m;0,1) gamma^{-1}.
Rational cusp_parameter_direct(const SL2Z& gamma, i64 width, const DirichletCharacter& chi);

std::string cusp_repr(i64 num, i64 den);
// Parses "inf", "0", or "a/b" in lowest terms.
std::pair<i64, i64> parse_cusp(const std::string& text);

}  // namespace cusptransfer
