#include "cusptransfer/cusps.hpp"

#include <algorithm>
#include <sstream>

namespace cusptransfer {

std::string PrimeTag::str() const {
    switch (type) {
        case CuspType::Infinity: return "inf";
        case CuspType::Zero: return "0";
        case CuspType::Intermediate:
            return "1/" + std::to_string(c1 * ipow(q, l));
    }
    return "?";
}

std::string cusp_repr(i64 num, i64 den) {
    if (den == 0) return "inf";
    if (den < 0) { den = -den; num = -num; }
    if (num == 0) return "0";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::pair<i64, i64> parse_cusp(const std::string& text) {
    if (text == "inf" || text == "oo") return {1, 0};
    auto slash = text.find('/');
    i64 a, b;
    try {
        if (slash == std::string::npos) {
            a = std::stoll(text);
            b = 1;
        } else {
            a = std::stoll(text.substr(0, slash));
            b = std::stoll(text.substr(slash + 1));
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed cusp: " + text);
    }
    if (b == 0) return {1, 0};
    if (b < 0) { a = -a; b = -b; }
    if (gcd64(a, b) != 1) throw std::invalid_argument("cusp fraction not in lowest terms");
    return {a, b};
}

std::string CuspClass::repr() const { return cusp_repr(repr_num, repr_den); }

std::vector<PrimeTag> enumerate_prime_power(i64 q, i64 e) {
    if (!is_prime(q)) throw std::invalid_argument("q is not prime");
    if (e < 1) throw std::invalid_argument("exponent must be positive");
    std::vector<PrimeTag> out;
    out.push_back(PrimeTag{q, e, CuspType::Infinity, 0, 0});
    out.push_back(PrimeTag{q, e, CuspType::Zero, 0, 0});
    for (i64 l = 1; l < e; ++l) {
        i64 bound = std::min(ipow(q, l), ipow(q, e - l));
        for (i64 c1 = 1; c1 < bound; ++c1) {
            if (gcd64(c1, q) != 1) continue;
            out.push_back(PrimeTag{q, e, CuspType::Intermediate, l, c1});
        }
    }
    return out;
}

Rational cusp_parameter_direct(const SL2Z& gamma, i64 width, const DirichletCharacter& chi) {
    SL2Z g(Mat2{1, width, 0, 1});
    SL2Z ga = gamma * g * gamma.inverse();
    UnitValue v = chi.chi_tilde(ga);
    return v.phase().exponent();
}

Rational cusp_parameter_prime_power(i64 q, i64 e, i64 l, i64 c1,
                                    const DirichletCharacter& chi) {
    if (l < 1 || l >= e) throw std::invalid_argument("l out of range");
    if (gcd64(c1, q) != 1 || c1 < 1 || c1 >= std::min(ipow(q, l), ipow(q, e - l)))
        throw std::invalid_argument("c1 out of range");
    if (chi.modulus() != ipow(q, e)) throw std::invalid_argument("character modulus mismatch");

    i64 e0 = 0;
    if (const CharComponent* comp = chi.component_at(q)) e0 = comp->conductor_exponent();
    i64 lmax = std::max(l, e - l);
    if (lmax >= e0) return Rational(0);

    i64 qe = ipow(q, e);
    i64 dmod = ipow(q, e0 - lmax);  // min(q^{e0-l}, q^{e0-e+l})
    // mu_0 = 1/dmod at the cusp 1/(c0 q^l), c0 the least positive residue whose
    // chi-tilde value is e^{2 pi i / dmod}
    PhaseQZ target = PhaseQZ(Rational(1, dmod));
    i64 c0 = 0;
    for (i64 c = 1; c < dmod; ++c) {
        if (gcd64(c, q) != 1) continue;
        UnitValue v = chi.eval(1 + mul_mod(c, ipow(q, lmax), qe));
        if (!v.is_zero() && v.phase() == target) { c0 = c; break; }
    }
    if (c0 == 0) throw std::logic_error("cusp parameter: no c0 found");
    i64 r = mod_reduce(mul_mod(c1, inv_mod(c0, dmod), dmod), dmod);
    Rational mu = Rational(r, dmod).frac();
    return mu;
}

CuspTable::CuspTable(i64 level, DirichletCharacter chi)
    : level_(level), chi_(std::move(chi)) {
    if (level <= 0) throw std::invalid_argument("level must be positive");
    if (chi_.modulus() != level) throw std::invalid_argument("character modulus mismatch");
    for (i64 u = 1; u <= level_; ++u)
        if (gcd64(u, level_) == 1) units_.push_back(u % level_);

    // one class per tuple of prime-power representatives
    std::vector<std::vector<PrimeTag>> per_prime;
    for (auto [q, e] : factorize(level_)) per_prime.push_back(enumerate_prime_power(q, e));

    std::vector<size_t> idx(per_prime.size(), 0);
    while (true) {
        std::vector<PrimeTag> tags;
        for (size_t i = 0; i < per_prime.size(); ++i) tags.push_back(per_prime[i][idx[i]]);

        CuspClass cc;
        cc.id = int(classes_.size());
        cc.tags = tags;

        // width = lcm of per-prime widths
        cc.width = 1;
        for (auto& t : tags) cc.width = lcm64(cc.width, t.width());

        // CRT the bottom rows, then adjust d by multiples of N for coprimality
        std::vector<std::pair<i64, i64>> ccong, dcong;
        for (auto& t : tags) {
            auto [c, d] = t.bottom_row();
            i64 m = ipow(t.q, t.e);
            ccong.emplace_back(c, m);
            dcong.emplace_back(d, m);
        }
        i64 c = level_ == 1 ? 0 : crt_solve(ccong);
        i64 d = level_ == 1 ? 1 : crt_solve(dcong);
        if (c == 0) {
            d = 1;  // the all-oo tuple
        } else {
            while (gcd64(c, d) != 1) d += level_;
        }
        cc.gamma = complete_to_sl2(c, d);
        cc.key = canonical_key(c, d);
        cc.repr_num = cc.gamma.a;
        cc.repr_den = cc.gamma.c;
        if (cc.repr_den < 0) { cc.repr_den = -cc.repr_den; cc.repr_num = -cc.repr_num; }

        // mu = frac(sum_q (m/m_q) mu_q)  (per-prime parameters w.r.t. chi_q)
        Rational mu_sum(0);
        for (auto& t : tags) {
            if (t.type != CuspType::Intermediate) continue;
            Rational mu_q =
                cusp_parameter_prime_power(t.q, t.e, t.l, t.c1, chi_.component_character(t.q));
            mu_sum = mu_sum + Rational(cc.width / t.width()) * mu_q;
        }
        cc.mu = mu_sum.frac();

        classes_.push_back(cc);
        if (lookup_.count(cc.key))
            throw std::logic_error("cusp table: duplicate orbit key");
        lookup_[cc.key] = cc.id;

        size_t i = 0;
        while (i < idx.size()) {
            if (++idx[i] < per_prime[i].size()) break;
            idx[i] = 0;
            ++i;
        }
        if (idx.empty() || i == idx.size()) break;
    }
}

std::pair<i64, i64> CuspTable::canonical_key(i64 c, i64 d) const {
    i64 n = level_;
    c = mod_reduce(c, n);
    d = mod_reduce(d, n);
    i64 g = gcd64(c, n);
    if (g == 0) g = n;
    std::pair<i64, i64> best{INT64_MAX, INT64_MAX};
    for (i64 u : units_) {
        i64 cu = mul_mod(c, u, n);
        i64 du = g == n ? 0 : mod_reduce(mul_mod(d, u, n), g);
        // translations leave c fixed and move d by multiples of c, i.e. of g
        std::pair<i64, i64> cand{cu, du};
        if (cand < best) best = cand;
    }
    return best;
}

i64 CuspTable::psi() const {
    i64 s = 0;
    for (auto& c : classes_) s += c.width;
    return s;
}

int CuspTable::class_of_point(i64 c, i64 d) const {
    auto it = lookup_.find(canonical_key(c, d));
    if (it == lookup_.end()) throw std::logic_error("cusp table: unknown orbit key");
    return it->second;
}

CuspReduction CuspTable::reduce(i64 a, i64 b) const {
    SL2Z gx = cusp_to_matrix(a, b);
    int id = class_of_point(gx.c, gx.d);
    const CuspClass& cc = cls(id);
    for (i64 j = 0; j < cc.width; ++j) {
        Mat2 cand = cc.gamma * translation(j);
        // gamma0 = gx * cand^{-1}
        Mat2 g0 = gx * SL2Z(cand).inverse();
        if (mod_reduce(g0.c, level_) == 0) {
            CuspReduction red;
            red.class_id = id;
            red.gamma0 = SL2Z(g0);
            red.j = j;
            red.chi_gamma0 = chi_.chi_tilde(red.gamma0);
            red.width = cc.width;
            red.mu = cc.mu;
            return red;
        }
    }
    throw std::logic_error("cusp reduction failed");
}

int CuspTable::unit_action(i64 a, int class_id) const {
    if (gcd64(a, level_) != 1) throw std::invalid_argument("unit_action: not a unit");
    const CuspClass& cc = cls(class_id);
    return class_of_point(mul_mod(cc.gamma.c, a, level_), mod_reduce(cc.gamma.d, level_));
}

}  // namespace cusptransfer
