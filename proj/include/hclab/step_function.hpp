#pragma once

#include "hclab/circle.hpp"
#include "hclab/expression.hpp"
#include "hclab/interval_set.hpp"

#include <optional>
#include <vector>

namespace hclab {

struct StepPiece {
    IntervalSet set;
    double value = 0.0;
    /// Present when the value is an exact rational.
    std::optional<Rational> exact;
};

/// Step function sum alpha_i chi_{E_i} on the circle with pairwise disjoint
/// E_i covering the circle.
class StepFunction {
public:
    /// Throws std::invalid_argument unless the sets are disjoint and cover the circle.
    explicit StepFunction(std::vector<StepPiece> pieces);

    static StepFunction constant(double c);
    static StepFunction constant(const Rational& c);

    const std::vector<StepPiece>& pieces() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }
    bool is_exact() const noexcept;

    /// Index of the piece containing x.
    std::size_t piece_at(double x) const;
    std::size_t piece_at(const Rational& x) const;
    double eval(double x) const { return pieces_[piece_at(x)].value; }

    double integral() const;
    std::optional<Rational> exact_integral() const;

    /// Pointwise ln; every value must be positive. Exact only for the value 1.
    StepFunction log() const;
    StepFunction exp() const;

private:
    std::vector<StepPiece> pieces_;
};

enum class ApproxSide { Above, Below };

/// Step function Phi with W <= Phi <= W + eps (Above) or W - eps <= Phi <= W
/// (Below) on the whole circle.
///
/// The circle is cut into dyadic cells on which the interval enclosure of W
/// is narrower than eps/16; each cell takes the first cut height above (or
/// below) its enclosure. Cut heights are midpoints between adjacent distinct
/// sampled values of W, so no cut sits on a value W holds on a sampled
/// plateau. Throws PlateauResolutionFailure when no admissible cut height
/// exists at grid resolution.
StepFunction step_approx(const Expression& w, double eps, ApproxSide side);

struct SandwichResult {
    bool holds = false;
    /// Bounds on (1/N) ln phi_N taken factor by factor from alpha_i^{m_i -+ eps}.
    double log_lower = 0.0;
    double log_upper = 0.0;
    /// Extremes of (1/N) ln phi_N(x) over all x.
    double log_min = 0.0;
    double log_max = 0.0;
    /// A point where the bound is tightest or violated.
    double witness = 0.0;
    /// sup over x and i of |c_i(x)/N - m_i|, c_i(x) = #{0 <= n < N : x - n a in E_i}.
    double count_deviation = 0.0;
    std::size_t samples = 0;
};

/// Checks prod alpha_i^{m_i - eps} <= (phi_N)^{1/N} <= prod alpha_i^{m_i + eps}
/// at every x, exactly over the breakpoints of the N translates.
SandwichResult sandwich_check(const StepFunction& phi, const CircleElement& a, double eps, long long n);

} // namespace hclab
