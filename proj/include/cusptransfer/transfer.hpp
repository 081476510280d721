#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "cusptransfer/coeffview.hpp"
#include "cusptransfer/cusps.hpp"

namespace cusptransfer {

// Factorization eps*M + mu_a = eps * m_a * M0 * prod_{q|N} q^{m'_q} with M0
// coprime to N.
struct IndexDecomposition {
    int eps = 1;
    i64 M = 0;
    i64 M0 = 1;
    std::vector<std::pair<i64, i64>> m0_factors;  // M0 = prod p^m, m > 0
    std::map<i64, i64> m_by_prime;                // q -> m'_q (any sign)
    Rational mu;
};

IndexDecomposition decompose_index(const CuspClass& cls, int eps, i64 M, const CuspTable& table);

struct TransferTarget {
    i64 q = 0;           // prime of N this factor comes from
    int target_class = 0;
    i64 j = 0;
    bool integral = true;   // whether m_b q^{m'} - mu_b is an integer
    i64 target_index = 0;   // valid when integral
};

// Exact symbolic identity
//   A(a, eps*M) = phase * A(oo, eps) * prod A(oo, p^m) * prod_q A(b_q, idx_q)
// or the assertion A(a, eps*M) = 0 when some target index is non-integral.
struct TransferCertificate {
    int source_class = 0;
    int eps = 1;
    i64 M = 0;
    bool zero = false;
    PhaseQZ phase;
    std::vector<std::pair<i64, i64>> m0_factors;
    std::vector<TransferTarget> targets;

    std::string to_string(const CuspTable& table) const;
    // Evaluates the right-hand side against coefficient data.
    std::complex<double> evaluate(const CoefficientView& view, const CuspTable& table) const;
};

// Prime-power level: closed-form solution of the c', j congruences.
TransferCertificate transfer_prime_power(const CuspClass& cls, int eps, i64 M,
                                         const CuspTable& table);

// Arbitrary level: per-prime targets found by the local membership condition.
TransferCertificate transfer_general(const CuspClass& cls, int eps, i64 M,
                                     const CuspTable& table);

// Exact membership oracle at one prime q^e of N: all entries of
// gamma_b T(j) diag(M_i, 1) gamma_a^{-1} are q-integral and the lower left has
// q-valuation >= e.
bool membership_ok(const SL2Z& gamma_b, i64 j, const Rational& scaled_index,
                   const SL2Z& gamma_a, i64 q, i64 e);

enum class MultDecision { MultiplicativeByTheorem, EightCase, Unknown };

// Sufficient conditions for multiplicativity of B(a/b, .) at level N.
MultDecision multiplicativity_condition(i64 N, i64 a, i64 b);

std::string mult_decision_str(MultDecision d);

// The obstruction phase at level 8*odd: alpha = 2^e (1+2j+4k) -> e_oo(2^e j).
PhaseQZ eight_case_phase(const Rational& alpha);

struct FactorizabilityReport {
    double max_residual = 0.0;
    bool pass = true;
    i64 quadruples = 0;
    std::string worst;  // description of the worst quadruple
};

// Cross-ratio multiplicativity test: B(ab)B(a'b') = B(ab')B(a'b) over
// quadruples whose two halves have disjoint prime support.  If divide_eight
// is set, values are divided by eight_case_phase first.
FactorizabilityReport factorizability_test(const CoefficientView& view, const CuspClass& cls,
                                           const std::vector<Rational>& support, double tol,
                                           bool divide_eight = false);

}  // namespace cusptransfer
