#include "hclab/repcheck.hpp"

#include <cmath>
#include <numbers>

namespace hclab {

std::complex<double> circle_character(long long k, double x)
{
    return std::polar(1.0, 2 * std::numbers::pi * circle::scaled_angle(fold_unit(x), k));
}

std::optional<long long> circle_has_fixed_character(const CircleElement& a, long long k_max)
{
    if (k_max < 1)
        throw std::invalid_argument("k_max must be at least 1");
    if (!a.is_exact())
        return std::nullopt;
    const BigInt q = denominator(*a.exact());
    if (q > k_max)
        return std::nullopt;
    return static_cast<long long>(q);
}

FixedIrrepCertificate fixed_irrep_multiplicity(FiniteElement a, const FiniteGroup& g)
{
    FixedIrrepCertificate c;
    c.group = g.name();
    c.element = a;
    c.element_order = g.element_order(a);
    std::vector<bool> seen(g.order(), false);
    for (FiniteElement start = 0; start < g.order(); ++start) {
        if (seen[start])
            continue;
        ++c.multiplicity;
        for (FiniteElement x = start; !seen[x]; x = g.mul(x, a))
            seen[x] = true;
    }
    c.verdict = c.multiplicity > 1;
    return c;
}

bool noncyclic_equivalence_check(const FiniteGroup& g)
{
    bool all_fixed = true;
    bool some_generator = false;
    for (FiniteElement a = 0; a < g.order(); ++a) {
        all_fixed = all_fixed && fixed_irrep_multiplicity(a, g).verdict;
        some_generator = some_generator || g.generates(a);
    }
    return all_fixed == !some_generator;
}

} // namespace hclab
