#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gframe/report.hpp"

namespace gframe {

// Finite group on elements {0..n-1} given by its multiplication table.
// Immutable after construction; all group laws hold exactly (checked by
// build_group_from_table).
struct FiniteGroup {
    int order = 1;
    std::vector<int> table;  // row-major, table[g*order + h] = g*h
    int identity = 0;
    std::vector<int> inverses;

    int mul(int g, int h) const { return table[g * order + h]; }
    int inv(int g) const { return inverses[g]; }
    bool is_abelian() const;
};

// Validates associativity, a two-sided identity, inverses and the Latin
// square property. Throws NotAGroupError with a witness on failure.
FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& table);

// Finite abelian group as a product of cyclic factors Z_{n_1} x ... x Z_{n_k}.
// Elements are tuples (a_1,...,a_k), 0 <= a_j < n_j, flattened mixed-radix
// with a_1 most significant. The derived FiniteGroup adds componentwise.
struct AbelianGroup {
    std::vector<int> orders;
    FiniteGroup group;

    int order() const { return group.order; }
    int identity() const { return group.identity; }
    int add(int g, int h) const { return group.mul(g, h); }
    int neg(int g) const { return group.inv(g); }

    std::vector<int> decode(int g) const;
    int encode(const std::vector<int>& digits) const;

    // chi_c(g) as an exact phase numerator: chi_c(g) = exp(2*pi*i*m/order())
    // with m = character_phase(c, g) in {0..order()-1}. Character indices
    // live in the same mixed-radix encoding as elements.
    int character_phase(int c, int g) const;
    std::complex<double> character_value(int c, int g) const;
};

AbelianGroup build_abelian(const std::vector<int>& orders);

// One character of a finite abelian group, self-contained so it can outlive
// the group object it was enumerated from.
struct Character {
    std::vector<int> exponents;
    std::vector<int> orders;

    std::complex<double> value(int g) const;
    std::complex<double> operator()(int g) const { return value(g); }
};

// All o(G) characters, indexed by the mixed-radix encoding of their exponents.
std::vector<Character> characters(const AbelianGroup& g);

// Verifies <xi,chi> = delta_{xi,chi} over all character pairs and the dual
// identity <g,h> = delta_{g,h} over all element pairs. Failures are reported,
// not thrown.
VerificationReport check_character_orthogonality(const AbelianGroup& g, double tol = 1e-12);

// Closure of gens under multiplication and inverse; always contains the
// identity. The returned set is sorted. The Lagrange divisibility of the
// result is asserted.
std::vector<int> subgroup_from_generators(const FiniteGroup& g, const std::vector<int>& gens);

std::string describe(const FiniteGroup& g);
std::string describe(const AbelianGroup& g);

}  // namespace gframe
