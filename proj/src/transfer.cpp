#include "cusptransfer/transfer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cusptransfer {

namespace {

i64 rational_valuation(const Rational& r, i64 q) {
    if (r.is_zero()) throw std::domain_error("valuation of zero");
    return valuation(r.num(), q) - valuation(r.den(), q);
}

Rational q_power(i64 q, i64 m) {
    return m >= 0 ? Rational(ipow(q, m)) : Rational(1, ipow(q, -m));
}

const PrimeTag& tag_at(const CuspClass& cls, i64 q) {
    for (auto& t : cls.tags)
        if (t.q == q) return t;
    throw std::logic_error("no tag at prime");
}

}  // namespace

IndexDecomposition decompose_index(const CuspClass& cls, int eps, i64 M,
                                   const CuspTable& table) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +-1");
    if (M < 0) throw std::invalid_argument("M must be nonnegative");
    Rational total = Rational(eps) * Rational(M) + cls.mu;
    if (total.is_zero()) throw std::domain_error("eps*M + mu = 0 has no decomposition");

    IndexDecomposition d;
    d.eps = eps;
    d.M = M;
    d.mu = cls.mu;

    Rational r = total / (Rational(eps) * Rational(cls.width));
    if (r.sign() <= 0) throw std::logic_error("index decomposition: sign error");
    i64 num = r.num(), den = r.den();
    for (auto [q, e] : factorize(table.level())) {
        (void)e;
        d.m_by_prime[q] = valuation(num, q) - valuation(den, q);
        while (num % q == 0) num /= q;
        while (den % q == 0) den /= q;
    }
    if (den != 1) throw std::logic_error("index decomposition: non-level denominator");
    d.M0 = num;
    d.m0_factors = factorize(num);
    if (num == 1) d.m0_factors.clear();
    return d;
}

namespace {

// gamma_b T(j) diag(s, 1) gamma_a^{-1}, entries as rationals (s may be negative).
struct RatMat {
    Rational a, b, c, d;
};

RatMat conjugated_dilation(const SL2Z& gamma_b, i64 j, const Rational& s, const SL2Z& gamma_a) {
    Mat2 left = gamma_b * translation(j);
    SL2Z right = gamma_a.inverse();
    // left * diag(s,1) = (a*s, b; c*s, d)
    Rational la = Rational(left.a) * s, lb(left.b), lc = Rational(left.c) * s, ld(left.d);
    RatMat x;
    x.a = la * Rational(right.a) + lb * Rational(right.c);
    x.b = la * Rational(right.b) + lb * Rational(right.d);
    x.c = lc * Rational(right.a) + ld * Rational(right.c);
    x.d = lc * Rational(right.b) + ld * Rational(right.d);
    return x;
}

}  // namespace

bool membership_ok(const SL2Z& gamma_b, i64 j, const Rational& scaled_index,
                   const SL2Z& gamma_a, i64 q, i64 e) {
    RatMat x = conjugated_dilation(gamma_b, j, scaled_index, gamma_a);
    auto val_ok = [&](const Rational& r, i64 min_v) {
        return r.is_zero() || rational_valuation(r, q) >= min_v;
    };
    return val_ok(x.a, 0) && val_ok(x.b, 0) && val_ok(x.d, 0) && val_ok(x.c, e);
}

TransferCertificate transfer_prime_power(const CuspClass& cls, int eps, i64 M,
                                         const CuspTable& table) {
    auto factors = factorize(table.level());
    if (factors.size() != 1) throw std::invalid_argument("level is not a prime power");
    i64 q = factors[0].first, e = factors[0].second;
    i64 qe = table.level();

    IndexDecomposition dec = decompose_index(cls, eps, M, table);
    i64 m = dec.m_by_prime.at(q);

    TransferCertificate cert;
    cert.source_class = cls.id;
    cert.eps = eps;
    cert.M = M;
    cert.m0_factors = dec.m0_factors;

    const PrimeTag& tag = cls.tags[0];
    TransferTarget tgt;
    tgt.q = q;

    if (tag.type == CuspType::Infinity) {
        tgt.target_class = cls.id;
        tgt.j = 0;
        tgt.target_index = ipow(q, m);  // m = alpha >= 0
        cert.targets.push_back(tgt);
        return cert;
    }
    if (tag.type == CuspType::Zero) {
        tgt.target_class = cls.id;
        tgt.j = 0;
        tgt.target_index = ipow(q, e + m);
        cert.targets.push_back(tgt);
        UnitValue v = table.character().eval(eps * dec.M0);
        cert.phase = v.phase().inverse();
        return cert;
    }

    // a = 1/(c q^l)
    i64 l = tag.l, c = tag.c1;
    i64 ql = ipow(q, l);
    i64 minpow = std::min(ql, ipow(q, e - l));
    i64 cprime = mod_reduce(mul_mod(c, inv_mod(eps * dec.M0, minpow), minpow), minpow);
    if (cprime == 0) throw std::logic_error("transfer: c' out of range");

    // locate the class 1/(c' q^l)
    const CuspClass* target = nullptr;
    for (auto& cand : table.classes()) {
        const PrimeTag& t = cand.tags[0];
        if (t.type == CuspType::Intermediate && t.l == l && t.c1 == cprime) {
            target = &cand;
            break;
        }
    }
    if (!target) throw std::logic_error("transfer: target class not found");
    tgt.target_class = target->id;

    i64 j = 0;
    if (2 * l <= e) {
        i64 w = ipow(q, e - 2 * l);  // q^{e-2l}, = 1 when e = 2l
        i64 diff = checked_cast(i128(cprime) * eps * dec.M0 - c, "transfer");
        if (mod_reduce(diff, ql) != 0) throw std::logic_error("transfer: c' congruence failed");
        j = mod_reduce(mul_mod(diff / ql, inv_mod(mul_mod(c, cprime, w), w), w), w);
        // e_oo(q^m j) chi(j c' q^l + 1)^{-1}
        cert.phase = PhaseQZ(q_power(q, m) * Rational(j));
        i64 arg = mod_reduce(checked_cast(i128(j) * cprime % qe * ql + 1, "transfer"), qe);
        cert.phase = cert.phase * table.character().eval(arg).phase().inverse();
    }
    tgt.j = j;

    // target index m_b q^m - mu_b
    Rational idx = Rational(target->width) * q_power(q, m) - target->mu;
    if (!idx.is_integer()) throw std::logic_error("transfer: prime-power index not integral");
    tgt.target_index = idx.num();
    if (!cls.mu.is_zero() && tgt.target_index != 0)
        throw std::logic_error("transfer: nonzero index at mu != 0 cusp");
    cert.targets.push_back(tgt);

    // membership oracle on the explicit matrix identity
    if (!membership_ok(target->gamma, j, Rational(eps) * Rational(dec.M0), cls.gamma, q, e))
        throw std::logic_error("transfer: membership check failed");
    return cert;
}

TransferCertificate transfer_general(const CuspClass& cls, int eps, i64 M,
                                     const CuspTable& table) {
    IndexDecomposition dec = decompose_index(cls, eps, M, table);
    TransferCertificate cert;
    cert.source_class = cls.id;
    cert.eps = eps;
    cert.M = M;
    cert.m0_factors = dec.m0_factors;

    auto factors = factorize(table.level());
    for (auto [q, e] : factors) {
        i64 mq = dec.m_by_prime.at(q);
        // eps*M_i = eps*M0 * prod_{u != q} q_u^{m'_u}
        Rational scaled(eps * dec.M0);
        for (auto [u, eu] : factors) {
            (void)eu;
            if (u != q) scaled = scaled * q_power(u, dec.m_by_prime.at(u));
        }

        const CuspClass* found = nullptr;
        i64 found_j = -1;
        for (auto& cand : table.classes()) {
            // gamma_b T(j) must lie in Gamma_0(q_u^{e_u}) for every other prime u
            bool gamma0_elsewhere = true;
            for (auto [u, eu] : factors)
                if (u != q && mod_reduce(cand.gamma.c, ipow(u, eu)) != 0) gamma0_elsewhere = false;
            if (!gamma0_elsewhere) continue;
            for (i64 j = 0; j < cand.width; ++j) {
                if (membership_ok(cand.gamma, j, scaled, cls.gamma, q, e)) {
                    if (found) throw std::logic_error("transfer: target not unique");
                    found = &cand;
                    found_j = j;
                }
            }
        }
        if (!found) throw std::logic_error("transfer: no target found");

        TransferTarget tgt;
        tgt.q = q;
        tgt.target_class = found->id;
        tgt.j = found_j;
        Rational idx = Rational(found->width) * q_power(q, mq) - found->mu;
        tgt.integral = idx.is_integer();
        if (tgt.integral) tgt.target_index = idx.num();
        else cert.zero = true;

        // phase: e_oo(q^{m'} j) * prod_{u != q} chi_u(d_i)^{-1} * chi_q(delta delta' d_q)^{-1}
        cert.phase = cert.phase * PhaseQZ(q_power(q, mq) * Rational(found_j));

        Mat2 bi = found->gamma * translation(found_j);
        i64 qe = ipow(q, e);
        i64 delta = 1;
        for (auto [u, eu] : factors) {
            (void)eu;
            if (u == q) continue;
            i64 mu_ = dec.m_by_prime.at(u);
            if (mu_ < 0) delta = checked_cast(i128(delta) * ipow(u, -mu_), "delta");
            UnitValue vu = table.character().component_character(u).eval(bi.d);
            cert.phase = cert.phase * vu.phase().inverse();
        }
        GL2Q x = GL2Q(bi) * GL2Q(scaled, Rational(0), Rational(0), Rational(1)) *
                 GL2Q(cls.gamma.inverse());
        Rational dq_scaled = Rational(delta) * x.d;
        if (!dq_scaled.is_integer()) throw std::logic_error("transfer: delta clearing failed");
        // chi_q(delta delta' d_q) with delta' delta = 1 mod q^e: argument delta' * (delta d_q)
        i64 dprime = inv_mod(delta, qe);
        i64 arg = mul_mod(dprime, mod_reduce(dq_scaled.num(), qe), qe);
        UnitValue vq = table.character().component_character(q).eval(arg);
        cert.phase = cert.phase * vq.phase().inverse();

        cert.targets.push_back(tgt);
    }
    return cert;
}

std::string TransferCertificate::to_string(const CuspTable& table) const {
    std::ostringstream os;
    const CuspClass& src = table.cls(source_class);
    os << "A(" << src.repr() << ", " << (eps > 0 ? "+" : "-") << M << ") = ";
    if (zero) {
        os << "0";
        return os.str();
    }
    os << "phase(" << phase.str() << ")";
    os << " * A(inf," << (eps > 0 ? "+1" : "-1") << ")";
    for (auto [p, m] : m0_factors) {
        os << " * A(inf," << p;
        if (m > 1) os << "^" << m;
        os << ")";
    }
    for (auto& t : targets) {
        const CuspClass& b = table.cls(t.target_class);
        if (b.tags.size() == 1 && b.tags[0].type == CuspType::Infinity && t.target_index == 1)
            continue;  // A(inf, 1) = 1
        os << " * A(" << b.repr() << "," << t.target_index << ")";
    }
    return os.str();
}

std::complex<double> TransferCertificate::evaluate(const CoefficientView& view,
                                                   const CuspTable& table) const {
    if (zero) return 0.0;
    // the class of oo is the one whose tags are all oo
    int inf_id = table.class_of_point(0, 1);
    std::complex<double> v = phase.to_complex();
    v *= view.get(inf_id, eps);
    for (auto [p, m] : m0_factors) v *= view.get(inf_id, ipow(p, m));
    for (auto& t : targets) v *= view.get(t.target_class, t.target_index);
    return v;
}

MultDecision multiplicativity_condition(i64 N, i64 a, i64 b) {
    if (b != 0 && gcd64(a, b) != 1) throw std::invalid_argument("cusp fraction not reduced");
    i64 M = b == 0 ? N : gcd64(N, b);
    i64 rest = N / M;
    i64 g = gcd64(M, rest);
    if (g == 1) return MultDecision::MultiplicativeByTheorem;
    if (g == 2 && rest % 2 == 0 && rest % 4 != 0) return MultDecision::MultiplicativeByTheorem;
    // 8 * odd squarefree with 2 || b
    if (N % 8 == 0) {
        i64 odd = N / 8;
        bool odd_squarefree = odd % 2 == 1;
        if (odd_squarefree)
            for (auto [p, e] : factorize(odd))
                if (e > 1) odd_squarefree = false;
        if (odd_squarefree && b % 2 == 0 && b % 4 != 0) return MultDecision::EightCase;
    }
    return MultDecision::Unknown;
}

std::string mult_decision_str(MultDecision d) {
    switch (d) {
        case MultDecision::MultiplicativeByTheorem: return "multiplicative-by-theorem";
        case MultDecision::EightCase: return "eight-case";
        case MultDecision::Unknown: return "unknown";
    }
    return "?";
}

PhaseQZ eight_case_phase(const Rational& alpha) {
    if (alpha.is_zero()) throw std::domain_error("eight_case_phase: alpha = 0");
    i64 v = rational_valuation(alpha, 2);
    Rational odd = alpha / q_power(2, v);
    // odd part as a 2-adic unit mod 4: num * inv(den) mod 4
    i64 num = mod_reduce(odd.num(), 4);
    i64 den = mod_reduce(odd.den(), 4);
    i64 o = mul_mod(num, inv_mod(den, 4), 4);
    i64 j = (o - 1) / 2 % 2;
    return PhaseQZ(q_power(2, v) * Rational(j));
}

namespace {

std::set<i64> prime_support(const Rational& r) {
    std::set<i64> s;
    i64 n = r.num() < 0 ? -r.num() : r.num();
    for (auto [p, e] : factorize(n == 0 ? 1 : n)) { (void)e; s.insert(p); }
    for (auto [p, e] : factorize(r.den())) { (void)e; s.insert(p); }
    return s;
}

bool disjoint(const std::set<i64>& a, const std::set<i64>& b) {
    for (i64 x : a)
        if (b.count(x)) return false;
    return true;
}

}  // namespace

FactorizabilityReport factorizability_test(const CoefficientView& view, const CuspClass& cls,
                                           const std::vector<Rational>& support, double tol,
                                           bool divide_eight) {
    if (support.empty()) throw std::invalid_argument("factorizability_test: empty support");
    FactorizabilityReport rep;
    auto bval = [&](const Rational& alpha) {
        std::complex<double> v = view.b_value(cls, alpha);
        if (divide_eight && std::abs(v) > 0)
            v /= eight_case_phase(alpha).to_complex();
        return v;
    };
    std::vector<std::set<i64>> supp;
    supp.reserve(support.size());
    for (auto& s : support) supp.push_back(prime_support(s));

    size_t n = support.size();
    for (size_t ia = 0; ia < n; ++ia)
        for (size_t ib = ia + 1; ib < n; ++ib) {
            for (size_t ja = 0; ja < n; ++ja)
                for (size_t jb = ja + 1; jb < n; ++jb) {
                    std::set<i64> left = supp[ia];
                    left.insert(supp[ib].begin(), supp[ib].end());
                    std::set<i64> right = supp[ja];
                    right.insert(supp[jb].begin(), supp[jb].end());
                    if (!disjoint(left, right)) continue;
                    const Rational &a = support[ia], &ap = support[ib];
                    const Rational &b = support[ja], &bp = support[jb];
                    if (!view.b_available(cls, a * b) || !view.b_available(cls, ap * bp) ||
                        !view.b_available(cls, a * bp) || !view.b_available(cls, ap * b))
                        continue;
                    std::complex<double> lhs = bval(a * b) * bval(ap * bp);
                    std::complex<double> rhs = bval(a * bp) * bval(ap * b);
                    double denom = std::max({1.0, std::abs(lhs), std::abs(rhs)});
                    double res = std::abs(lhs - rhs) / denom;
                    ++rep.quadruples;
                    if (res > rep.max_residual) {
                        rep.max_residual = res;
                        std::ostringstream os;
                        os << "alpha=" << a.str() << " alpha'=" << ap.str()
                           << " beta=" << b.str() << " beta'=" << bp.str();
                        rep.worst = os.str();
                    }
                }
        }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

}  // namespace cusptransfer
