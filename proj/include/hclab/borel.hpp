#pragma once

#include "hclab/ball_set.hpp"
#include "hclab/finite_subset.hpp"
#include "hclab/group.hpp"
#include "hclab/interval_set.hpp"

#include <variant>

namespace hclab {

/// A member of the algebra for one of the three group families.
using BorelSet = std::variant<IntervalSet, BallSet, FiniteSubset>;

BorelSet empty_set(const GroupContext& g);
BorelSet whole_set(const GroupContext& g);

BorelSet set_union(const BorelSet& a, const BorelSet& b);
BorelSet set_intersection(const BorelSet& a, const BorelSet& b);
BorelSet set_complement(const BorelSet& a);
Rational measure(const BorelSet& a);
bool contains(const BorelSet& a, const Element& x);
FormTag classify_form(const BorelSet& a);

/// x^{-1} K, i.e. K - x in the additive groups.
BorelSet translate_inverse(const GroupContext& g, const BorelSet& k, const Element& x);

/// Throws ContextMismatch unless `a` is a set of the family `g`.
void check_set(const GroupContext& g, const BorelSet& a);

} // namespace hclab
