#pragma once

#include "hclab/circle.hpp"
#include "hclab/finite_group.hpp"
#include "hclab/padic.hpp"

#include <variant>

namespace hclab {

struct CircleGroup {
    friend bool operator==(const CircleGroup&, const CircleGroup&) = default;
};

/// One of the three supported compact group families, Haar measure normalized to 1.
using GroupContext = std::variant<FiniteGroup, CircleGroup, PAdicContext>;
using Element = std::variant<FiniteElement, CircleElement, PAdicNumber>;

Element identity(const GroupContext& g);

/// Group product; addition on the circle and on p-adic groups.
Element mul(const GroupContext& g, const Element& x, const Element& y);
Element inverse(const GroupContext& g, const Element& x);
Element pow(const GroupContext& g, const Element& a, long long n);

/// Throws ContextMismatch if `x` does not belong to `g`.
void check_member(const GroupContext& g, const Element& x);

/// Finite order: always in a finite group; exact-rational angles on the circle;
/// only 0 in a p-adic group.
bool is_torsion(const GroupContext& g, const Element& a);

/// The k-th term of the orbit sequence {a^{sign k}}, k >= 1.
struct OrbitSequence {
    GroupContext group;
    Element a;
    int sign = -1;

    Element term(long long k) const { return pow(group, a, sign * k); }
};

} // namespace hclab
