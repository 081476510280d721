#include "cusptransfer/dirichlet.hpp"

#include <algorithm>
#include <sstream>

namespace cusptransfer {

namespace {

// Fills the value table from generator assignments (u_i -> phase r_i) by
// closing under multiplication.  Throws if the u_i do not generate the unit
// group or if an assignment is inconsistent with the group relations.
CharComponent build_component(i64 q, i64 e,
                              const std::vector<std::pair<i64, Rational>>& gens) {
    CharComponent comp;
    comp.q = q;
    comp.e = e;
    comp.qe = ipow(q, e);
    comp.values.assign(size_t(comp.qe), std::nullopt);
    comp.values[1 % comp.qe] = PhaseQZ();

    for (auto& [u, r] : gens) {
        if (gcd64(u, q) != 1) throw std::invalid_argument("character generator not a unit");
        // order of u and consistency of the assigned value
        i64 uu = mod_reduce(u, comp.qe);
        i64 ord = 1, x = uu;
        while (x != 1 % comp.qe) { x = mul_mod(x, uu, comp.qe); ++ord; }
        if (!(PhaseQZ(r * Rational(ord)).is_one()))
            throw std::invalid_argument("character value order does not divide generator order");
    }

    // close under products of generators
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto& [u, r] : gens) {
            i64 uu = mod_reduce(u, comp.qe);
            PhaseQZ pu{r};
            for (i64 x = 0; x < comp.qe; ++x) {
                if (!comp.values[x].has_value()) continue;
                i64 y = mul_mod(x, uu, comp.qe);
                PhaseQZ py = *comp.values[x] * pu;
                if (!comp.values[y].has_value()) {
                    comp.values[y] = py;
                    grew = true;
                } else if (*comp.values[y] != py) {
                    throw std::invalid_argument("inconsistent character generator values");
                }
            }
        }
    }

    i64 covered = 0;
    for (i64 x = 0; x < comp.qe; ++x)
        if (comp.values[x].has_value()) ++covered;
    if (covered != euler_phi(comp.qe))
        throw std::invalid_argument("generators do not generate the unit group");
    return comp;
}

CharComponent trivial_component(i64 q, i64 e) {
    CharComponent comp;
    comp.q = q;
    comp.e = e;
    comp.qe = ipow(q, e);
    comp.values.assign(size_t(comp.qe), std::nullopt);
    for (i64 x = 0; x < comp.qe; ++x)
        if (gcd64(x, q) == 1) comp.values[x] = PhaseQZ();
    return comp;
}

Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed fraction in character spec: " + s);
    }
}

std::vector<std::pair<i64, Rational>> parse_gen_list(const std::string& body) {
    std::vector<std::pair<i64, Rational>> gens;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("malformed generator entry: " + item);
        i64 u;
        try {
            u = std::stoll(item.substr(0, colon));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed generator entry: " + item);
        }
        gens.emplace_back(u, parse_fraction(item.substr(colon + 1)));
    }
    return gens;
}

}  // namespace

i64 CharComponent::conductor_exponent() const {
    for (i64 e0 = 0; e0 <= e; ++e0) {
        i64 qe0 = ipow(q, e0);
        bool trivial_on_ue0 = true;
        for (i64 x = 1; x < qe; ++x) {
            if (!values[x].has_value()) continue;
            if (mod_reduce(x, qe0) != 1 % qe0) continue;
            if (!values[x]->is_one()) { trivial_on_ue0 = false; break; }
        }
        if (trivial_on_ue0) return e0;
    }
    return e;
}

DirichletCharacter::DirichletCharacter(i64 modulus, std::vector<CharComponent> comps)
    : modulus_(modulus), components_(std::move(comps)) {
    std::sort(components_.begin(), components_.end(),
              [](const CharComponent& a, const CharComponent& b) { return a.q < b.q; });
    i64 check = 1;
    conductor_ = 1;
    for (auto& c : components_) {
        check *= c.qe;
        conductor_ *= ipow(c.q, c.conductor_exponent());
    }
    if (check != modulus_) throw std::invalid_argument("character components do not match modulus");
}

DirichletCharacter DirichletCharacter::trivial(i64 modulus) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    std::vector<CharComponent> comps;
    for (auto [q, e] : factorize(modulus)) comps.push_back(trivial_component(q, e));
    return DirichletCharacter(modulus, std::move(comps));
}

DirichletCharacter DirichletCharacter::parse(const std::string& spec, i64 modulus) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    if (spec == "trivial") return trivial(modulus);

    if (spec.rfind("mod=", 0) != 0) throw std::invalid_argument("malformed character spec");
    auto semi = spec.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("malformed character spec");
    i64 n;
    try {
        n = std::stoll(spec.substr(4, semi - 4));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed character spec");
    }
    if (n != modulus) throw std::invalid_argument("character spec modulus mismatch");

    // split the remainder on ";comp=" into one generator list per prime power
    std::vector<std::string> lists;
    std::string rest = spec.substr(semi + 1);
    while (true) {
        auto pos = rest.find(";comp=");
        if (pos == std::string::npos) { lists.push_back(rest); break; }
        lists.push_back(rest.substr(0, pos));
        rest = rest.substr(pos + 6);
    }
    for (auto& l : lists) {
        if (l.rfind("gen=", 0) == 0) l = l.substr(4);
        else throw std::invalid_argument("malformed character spec: expected gen=");
    }

    auto factors = factorize(modulus);
    // the mod-2 component has a trivial unit group and takes no generator list
    std::vector<size_t> needs_list;
    for (size_t i = 0; i < factors.size(); ++i)
        if (!(factors[i].first == 2 && factors[i].second == 1)) needs_list.push_back(i);
    if (lists.size() != needs_list.size())
        throw std::invalid_argument("character spec: wrong number of generator lists");

    std::vector<CharComponent> comps;
    size_t li = 0;
    for (size_t i = 0; i < factors.size(); ++i) {
        auto [q, e] = factors[i];
        if (q == 2 && e == 1) {
            comps.push_back(trivial_component(q, e));
            continue;
        }
        auto gens = parse_gen_list(lists[li++]);
        if (q == 2 && e >= 3) {
            if (gens.size() != 2)
                throw std::invalid_argument("mod 2^e (e>=3) requires exactly two generators");
        } else if (gens.size() != 1) {
            throw std::invalid_argument("prime-power component requires exactly one generator");
        }
        comps.push_back(build_component(q, e, gens));
    }
    return DirichletCharacter(modulus, std::move(comps));
}

bool DirichletCharacter::is_trivial() const { return conductor_ == 1; }

const CharComponent* DirichletCharacter::component_at(i64 q) const {
    for (auto& c : components_)
        if (c.q == q) return &c;
    return nullptr;
}

UnitValue DirichletCharacter::eval(i64 d) const {
    UnitValue v = UnitValue::one();
    for (auto& c : components_) {
        v = v * c.eval(d);
        if (v.is_zero()) return v;
    }
    return v;
}

DirichletCharacter DirichletCharacter::component_character(i64 q) const {
    const CharComponent* c = component_at(q);
    if (!c) return trivial(1);
    return DirichletCharacter(c->qe, {*c});
}

UnitValue DirichletCharacter::chi_tilde(const SL2Z& gamma) const {
    if (mod_reduce(gamma.c, modulus_) != 0) throw std::domain_error("not in Gamma0(N)");
    return eval(gamma.d);
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    std::vector<CharComponent> comps;
    for (auto& c : components_) {
        i64 e0 = c.conductor_exponent();
        if (e0 == 0) continue;
        CharComponent pc;
        pc.q = c.q;
        pc.e = e0;
        pc.qe = ipow(c.q, e0);
        pc.values.assign(size_t(pc.qe), std::nullopt);
        for (i64 x = 0; x < c.qe; ++x) {
            if (!c.values[x].has_value()) continue;
            pc.values[mod_reduce(x, pc.qe)] = *c.values[x];
        }
        // units mod q^e0 hit by units mod q^e: all of them
        comps.push_back(std::move(pc));
    }
    return DirichletCharacter(conductor_, std::move(comps));
}

std::string DirichletCharacter::str() const {
    std::ostringstream os;
    os << "chi mod " << modulus_ << " (conductor " << conductor_ << ")";
    return os.str();
}

UnitValue idelic_component(const CharComponent& comp, i64 place, i64 val_k, i64 unit_j) {
    if (place == comp.q) {
        if (gcd64(unit_j, comp.q) != 1)
            throw std::domain_error("idelic_component: residue not a unit at p");
        return comp.eval(unit_j).inverse();
    }
    return comp.eval(place).pow(val_k);
}

std::vector<DirichletCharacter> all_characters(i64 modulus) {
    // per prime power, list the component characters via explicit generators
    std::vector<std::vector<CharComponent>> per_prime;
    for (auto [q, e] : factorize(modulus)) {
        std::vector<CharComponent> cs;
        i64 qe = ipow(q, e);
        if (q == 2 && e == 1) {
            cs.push_back(trivial_component(q, e));
        } else if (q == 2 && e == 2) {
            for (i64 t = 0; t < 2; ++t)
                cs.push_back(build_component(q, e, {{3, Rational(t, 2)}}));
        } else if (q == 2) {
            i64 half = qe / 4;  // order of 5 mod 2^e
            for (i64 s = 0; s < 2; ++s)
                for (i64 t = 0; t < half; ++t)
                    cs.push_back(build_component(
                        q, e, {{qe - 1, Rational(s, 2)}, {5, Rational(t, half)}}));
        } else {
            // find a primitive root mod q^e
            i64 phi = euler_phi(qe);
            i64 g = 0;
            for (i64 cand = 2; cand < qe; ++cand) {
                if (gcd64(cand, q) != 1) continue;
                i64 ord = 1, x = cand;
                while (x != 1) { x = mul_mod(x, cand, qe); ++ord; }
                if (ord == phi) { g = cand; break; }
            }
            for (i64 t = 0; t < phi; ++t)
                cs.push_back(build_component(q, e, {{g, Rational(t, phi)}}));
        }
        per_prime.push_back(std::move(cs));
    }
    std::vector<DirichletCharacter> out;
    std::vector<size_t> idx(per_prime.size(), 0);
    if (modulus == 1) {
        out.push_back(DirichletCharacter::trivial(1));
        return out;
    }
    while (true) {
        std::vector<CharComponent> comps;
        for (size_t i = 0; i < per_prime.size(); ++i) comps.push_back(per_prime[i][idx[i]]);
        out.push_back(DirichletCharacter(modulus, std::move(comps)));
        size_t i = 0;
        while (i < idx.size()) {
            if (++idx[i] < per_prime[i].size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size()) break;
    }
    return out;
}

}  // namespace cusptransfer
