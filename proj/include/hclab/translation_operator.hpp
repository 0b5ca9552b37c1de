#pragma once

#include "hclab/group.hpp"
#include "hclab/weight.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace hclab {

/// Samples of a function on a finite grid of the group: i/M on the circle,
/// residues modulo p^level on a p-adic group, all elements of a finite group.
/// `exact` carries rational samples when the whole pipeline is exact.
struct DiscretizedFunction {
    GroupContext group;
    unsigned level = 0; // p-adic grid level in stored digits
    std::vector<std::complex<double>> values;
    std::optional<std::vector<Rational>> exact;

    std::size_t size() const noexcept { return values.size(); }
    /// The group element at grid index i.
    Element point(std::size_t i) const;

    static DiscretizedFunction circle(std::vector<std::complex<double>> values);
    static DiscretizedFunction exact_circle(std::vector<Rational> values);
    static DiscretizedFunction padic(const PAdicContext& ctx, unsigned level, std::vector<Rational> values);
    static DiscretizedFunction finite(const FiniteGroup& g, std::vector<Rational> values);
    /// Indicator of the grid point i.
    static DiscretizedFunction delta(const GroupContext& g, std::size_t size, std::size_t i, unsigned level = 0);
};

enum class GridMode {
    Strict,  ///< throw GridMismatch unless a maps the grid onto itself
    Nearest, ///< round the circle shift to the nearest grid step
};

/// T_{a,w} f (x) = w(x) f(x a^{-1}).
DiscretizedFunction apply_operator(const Weight& w, const Element& a, const DiscretizedFunction& f,
                                   GridMode mode = GridMode::Strict);

/// Grid index of x a^{-1} for every grid index x; throws GridMismatch in strict mode.
std::vector<std::size_t> translation_indices(const GroupContext& g, std::size_t size, unsigned level,
                                             const Element& a, GridMode mode);

struct PowerIdentityCheck {
    double deviation = 0.0;
    /// Both sides were computed in exact arithmetic.
    bool exact = false;
    bool exact_zero = false;
};

/// Compares n successive applications of T_{a,w} with one application of
/// T_{a^n, w_n}.
PowerIdentityCheck operator_power_identity_check(const Weight& w, const Element& a, long long n,
                                                 const DiscretizedFunction& f);

/// sup-norm distance; exact comparison when both carry exact samples.
double sup_distance(const DiscretizedFunction& a, const DiscretizedFunction& b);

} // namespace hclab
