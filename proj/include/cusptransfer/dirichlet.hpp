#pragma once

#include <optional>
#include <vector>

#include "cusptransfer/mat.hpp"
#include "cusptransfer/phase.hpp"

namespace cusptransfer {

// One prime-power factor of a Dirichlet character, with a full value table on
// the unit group of Z/q^e.
struct CharComponent {
    i64 q = 0;       // prime
    i64 e = 0;       // exponent, q^e is the component modulus
    i64 qe = 1;      // q^e
    // values[r] holds the phase of chi at the unit residue r; nullopt off the units.
    std::vector<std::optional<PhaseQZ>> values;

    UnitValue eval(i64 d) const {
        i64 r = mod_reduce(d, qe);
        if (!values[r].has_value()) return UnitValue::zero();
        return UnitValue(*values[r]);
    }

    // Least e0 with the component trivial on units congruent to 1 mod q^e0.
    i64 conductor_exponent() const;
};

// Dirichlet character mod N as a CRT product of prime-power components.
class DirichletCharacter {
public:
    DirichletCharacter() : modulus_(1) {}
    DirichletCharacter(i64 modulus, std::vector<CharComponent> comps);

    static DirichletCharacter trivial(i64 modulus);
    // Grammar: "trivial" | "mod=<N>;gen=<u>:<r>[,<u>:<r>...][;comp=...]".
    static DirichletCharacter parse(const std::string& spec, i64 modulus);

    i64 modulus() const { return modulus_; }
    i64 conductor() const { return conductor_; }
    bool is_trivial() const;
    bool is_primitive() const { return conductor_ == modulus_; }

    const std::vector<CharComponent>& components() const { return components_; }
    const CharComponent* component_at(i64 q) const;

    UnitValue eval(i64 d) const;

    // The component character of modulus q^e (trivial if q does not divide N).
    DirichletCharacter component_character(i64 q) const;

    // chi-tilde on Gamma_0(N): value chi(d) on (a b; c d), c = 0 mod N.
    UnitValue chi_tilde(const SL2Z& gamma) const;

    // Primitive character of modulus = conductor inducing this one.
    DirichletCharacter primitive_part() const;

    std::string str() const;

private:
    i64 modulus_ = 1;
    i64 conductor_ = 1;
    std::vector<CharComponent> components_;
};

// Local factor of the idelic lift of a primitive component of conductor p^f,
// evaluated at an element of valuation k and unit residue j at the place v:
//   v != p : chi(v)^k;    v = p : chi(j)^{-1}.
UnitValue idelic_component(const CharComponent& comp, i64 place, i64 val_k, i64 unit_j);

// All characters mod N, trivial first, deterministic order.
std::vector<DirichletCharacter> all_characters(i64 modulus);

}  // namespace cusptransfer
