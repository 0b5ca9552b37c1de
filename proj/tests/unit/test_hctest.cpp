#include "hclab/hctest.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hclab;

namespace {

const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

StepFunction two_half()
{
    return StepFunction({{IntervalSet::interval(0, Rational(1, 2), true, false), 2.0, Rational(2)},
                         {IntervalSet::interval(Rational(1, 2), 1, true, false), 0.5, Rational(1, 2)}});
}

// w = exp(sin 2 pi x + c): log w_n is n c plus a sinusoid of amplitude |sin(n pi a) / sin(pi a)|
long long first_monotone_power(double c, double a, long long n_max)
{
    for (long long n = 1; n <= n_max; ++n) {
        const double amp = std::abs(std::sin(n * std::numbers::pi * a) / std::sin(std::numbers::pi * a));
        if (n * c - amp >= 0.0 || n * c + amp <= 0.0)
            return n;
    }
    return 0;
}

} // namespace

TEST_CASE("monotone power scan")
{
    const auto a = CircleElement::from_double(golden);
    const auto two = monotone_power_scan(Weight::constant(CircleGroup{}, 2), a, 50);
    CHECK(two.n == 1);
    CHECK(two.above);

    const auto step = monotone_power_scan(Weight::step(two_half()), CircleElement::from_rational(Rational(1, 2)), 50);
    CHECK(step.n == 2);
    CHECK(step.above);
    CHECK(step.below);
    CHECK(step.evidence == "exact");

    const auto smooth = monotone_power_scan(Weight::expression(Expression::parse("exp(sin(2*pi*x))")), a, 50);
    CHECK_FALSE(smooth.n);
    CHECK(smooth.trace.size() == 50);

    const long long expected = first_monotone_power(0.1, golden, 50);
    REQUIRE(expected > 0);
    const auto shifted = monotone_power_scan(Weight::expression(Expression::parse("exp(sin(2*pi*x) + 0.1)")), a, 50);
    CHECK(shifted.n == expected);
    CHECK(shifted.evidence == "certified");
}

TEST_CASE("verdict rules on the circle")
{
    const auto golden_a = Element{CircleElement::from_double(golden)};
    const auto smooth = Weight::expression(Expression::parse("exp(sin(2*pi*x))"));

    const auto torsion = verdict(smooth, CircleElement::from_rational(Rational(1, 4)));
    CHECK(torsion.verdict == VerdictKind::NotHypercyclic);
    CHECK(torsion.rule == RuleKind::Torsion);

    const auto passed = verdict(smooth, golden_a);
    CHECK(passed.verdict == VerdictKind::NecessaryConditionsPassed);
    CHECK(passed.rule == RuleKind::None);
    REQUIRE(passed.log_integral);
    CHECK(std::abs(passed.log_integral->value) < 1e-6);

    const auto shifted = Weight::expression(Expression::parse("exp(sin(2*pi*x) + 0.1)"));
    const auto fired = verdict(shifted, golden_a);
    CHECK(fired.verdict == VerdictKind::NotHypercyclic);
    CHECK(fired.rule == RuleKind::MonotoneWeightPower);
    CHECK(fired.n == first_monotone_power(0.1, golden, 50));

    VerdictConfig short_scan;
    short_scan.monotone_n_max = 3;
    const auto by_integral = verdict(shifted, golden_a, short_scan);
    CHECK(by_integral.rule == RuleKind::LogIntegralNonzero);
    REQUIRE(by_integral.value);
    CHECK(std::abs(*by_integral.value - 0.1) < 1e-5);

    const auto step = verdict(Weight::step(two_half()), golden_a);
    CHECK(step.verdict == VerdictKind::NecessaryConditionsPassed);
    REQUIRE(step.log_integral);
    REQUIRE(step.log_integral->exact);
    CHECK(step.log_integral->exact->is_zero());

    // w_3 <= 1 already holds here, so only look at n = 1
    VerdictConfig single;
    single.monotone_n_max = 1;
    const auto unbalanced = verdict(Weight::step(StepFunction({
                                        {IntervalSet::interval(0, Rational(1, 3), true, false), 2.0, Rational(2)},
                                        {IntervalSet::interval(Rational(1, 3), 1, true, false), 0.5, Rational(1, 2)},
                                    })),
                                    golden_a, single);
    CHECK(unbalanced.rule == RuleKind::LogIntegralNonzero);
    CHECK(unbalanced.exact_value);
    CHECK(*unbalanced.value == doctest::Approx(-std::log(2.0) / 3));
}

TEST_CASE("verdict rules on finite and p-adic groups")
{
    const FiniteGroup z4 = cyclic_group(4);
    const auto t = verdict(Weight::finite_table(z4, {2, 1, 1, Rational(1, 2)}), FiniteElement{1});
    CHECK(t.rule == RuleKind::Torsion);

    const PAdicContext z3{3, 4, 0};
    const auto one = PAdicNumber::from_integer(z3, 1);
    const auto flat = verdict(Weight::constant(z3, 1), one);
    CHECK(flat.rule == RuleKind::MonotoneWeightPower);
    CHECK(flat.n == 1);
    CHECK(flat.evidence == "exact");

    CosetTable table;
    table.level = 1;
    table.values = {2, Rational(1, 2), 1};
    const auto three = verdict(Weight::coset_table(z3, table), one);
    CHECK(three.verdict == VerdictKind::NotHypercyclic);
    CHECK(three.rule == RuleKind::LocallyConstant);
    CHECK(three.k == 1);
    CHECK(three.n == 3);

    CHECK(verdict(Weight::constant(z3, 2), PAdicNumber(z3)).rule == RuleKind::Torsion);
}

TEST_CASE("rule names")
{
    CHECK(to_string(RuleKind::LocallyConstant) == "LocallyConstant");
    CHECK(to_string(VerdictKind::NecessaryConditionsPassed) == "NecessaryConditionsPassed");
}
