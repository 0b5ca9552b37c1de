#pragma once

#include "hclab/circle.hpp"
#include "hclab/finite_group.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace hclab {

/// e^{2 pi i k x}.
std::complex<double> circle_character(long long k, double x);

/// Smallest 1 <= k <= k_max with k a an integer. Only exact-rational angles
/// can have one; binary64 angles always give nullopt.
std::optional<long long> circle_has_fixed_character(const CircleElement& a, long long k_max);

/// Eigenvalue-1 multiplicity of right multiplication by a in the regular
/// representation. The trivial representation accounts for one fixed vector,
/// so some nontrivial irreducible representation fixes a vector iff the
/// multiplicity exceeds 1.
struct FixedIrrepCertificate {
    std::string group;
    FiniteElement element = 0;
    std::size_t element_order = 0;
    std::size_t multiplicity = 0;
    bool verdict = false;
};

/// Counts the cycles of x -> x a explicitly.
FixedIrrepCertificate fixed_irrep_multiplicity(FiniteElement a, const FiniteGroup& g);

/// Checks that every element has a nontrivial fixed irrep exactly when no
/// element generates G. Returns true on every group; false means a bug.
bool noncyclic_equivalence_check(const FiniteGroup& g);

} // namespace hclab
