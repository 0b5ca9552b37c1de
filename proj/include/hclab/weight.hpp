#pragma once

#include "hclab/expression.hpp"
#include "hclab/group.hpp"
#include "hclab/step_function.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hclab {

/// ln(product) / denominator, kept symbolic so sums of logarithms of
/// rationals stay exact. Zero iff product == 1.
struct LogMass {
    Rational product = 1;
    BigInt denominator = 1;

    /// mass * ln(value) for rational mass >= 0 and value > 0.
    static LogMass of(const Rational& value, const Rational& mass);

    double value() const;
    bool is_zero() const { return product == 1; }
    LogMass& operator+=(const LogMass& other);
    friend LogMass operator+(LogMass a, const LogMass& b) { return a += b; }
    friend bool operator==(const LogMass& a, const LogMass& b)
    {
        return a.product == b.product && a.denominator == b.denominator;
    }
    /// Same quantity with the common denominator reduced; equality of
    /// normalized forms is equality of the real numbers.
    LogMass normalized() const;
};

/// Weight table on a p-adic context: constant on the cosets of p^level in
/// stored-residue coordinates, values[r] on the coset r + p^level.
struct CosetTable {
    unsigned level = 0;
    std::vector<Rational> values;
    /// The table claims the weight really is constant at this level. When
    /// false the table only samples a weight that may vary below it.
    bool declared_locally_constant = true;
};

/// Strictly positive bounded weight on a group.
class Weight {
public:
    /// Continuous weight on the circle.
    static Weight expression(Expression e);
    /// Step weight on the circle; values must be positive.
    static Weight step(StepFunction f);
    static Weight coset_table(const PAdicContext& ctx, CosetTable table);
    static Weight finite_table(const FiniteGroup& g, std::vector<Rational> values);
    static Weight constant(const GroupContext& g, const Rational& c);

    const GroupContext& group() const noexcept { return group_; }

    const Expression* as_expression() const noexcept { return std::get_if<Expression>(&body_); }
    const StepFunction* as_step() const noexcept { return std::get_if<StepFunction>(&body_); }
    const CosetTable* as_table() const noexcept { return std::get_if<CosetTable>(&body_); }
    const std::vector<Rational>* as_finite_table() const noexcept
    {
        return std::get_if<std::vector<Rational>>(&body_);
    }

    /// Whether every value is available as an exact rational.
    bool is_exact() const;

    double eval(const Element& x) const;
    double eval(double x) const;
    std::optional<Rational> eval_exact(const Element& x) const;

    /// Grid estimate of (inf, sup); exact for tables and step weights.
    Interval bounds() const noexcept { return bounds_; }
    std::string describe() const;

private:
    using Body = std::variant<Expression, StepFunction, CosetTable, std::vector<Rational>>;
    Weight(GroupContext g, Body b);

    GroupContext group_;
    Body body_;
    Interval bounds_;
};

struct WeightProduct {
    double value = 0.0;
    std::optional<Rational> exact;
};

/// w_n(x) = prod_{j=0}^{n-1} w(x a^{-j}).
WeightProduct weight_product(const Weight& w, const Element& a, long long n, const Element& x);

struct LogIntegral {
    double value = 0.0;
    std::optional<LogMass> exact;
    /// Midpoint nodes used, 0 for exact evaluation.
    std::size_t nodes = 0;
    /// |I_M - I_{M/2}|, the consistency guard of the quadrature.
    double consistency = 0.0;
};

/// Integral of ln w against normalized Haar measure. Circle expressions use
/// the composite midpoint rule at `nodes` points; everything else is exact.
/// Throws NonPositiveWeight.
LogIntegral log_integral(const Weight& w, std::size_t nodes = 1u << 16);

} // namespace hclab
