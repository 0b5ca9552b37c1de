#include "hclab/errors.hpp"
#include "hclab/step_function.hpp"
#include "hclab/translation_operator.hpp"
#include "hclab/weight.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hclab;

namespace {

const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

StepFunction two_half()
{
    return StepFunction({{IntervalSet::interval(0, Rational(1, 2), true, false), 2.0, Rational(2)},
                         {IntervalSet::interval(Rational(1, 2), 1, true, false), 0.5, Rational(1, 2)}});
}

Element circle_exact(long long n, long long d) { return CircleElement::from_rational(Rational(n, d)); }

} // namespace

TEST_CASE("expression parsing and evaluation")
{
    const auto e = Expression::parse("exp(sin(2*pi*x) + 0.1)");
    CHECK(e.eval(0.25) == doctest::Approx(std::exp(1.1)));
    CHECK(e.depends_on_x());
    CHECK(Expression::parse("1/3 + 2*2").exact_constant() == Rational(13, 3));
    CHECK_FALSE(Expression::parse("sqrt(2)").exact_constant());
    CHECK_THROWS_AS(Expression::parse("sin(x"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x +* 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), ParseError);

    const auto box = e.enclose({0.1, 0.2});
    for (int i = 0; i <= 100; ++i)
        CHECK(box.contains(e.eval(0.1 + 0.001 * i)));
}

TEST_CASE("weights must be positive")
{
    CHECK_THROWS_AS(Weight::expression(Expression::parse("sin(2*pi*x)")), NonPositiveWeight);
    CHECK_THROWS_AS(Weight::constant(CircleGroup{}, 0), NonPositiveWeight);
    CHECK_THROWS_AS(Weight::finite_table(cyclic_group(2), {1, -1}), NonPositiveWeight);
}

TEST_CASE("weight products")
{
    const auto one = Weight::constant(CircleGroup{}, 1);
    CHECK(weight_product(one, CircleElement::from_double(golden), 7, CircleElement::from_double(0.3)).value == 1.0);

    const auto w = Weight::step(two_half());
    for (int i = 0; i < 16; ++i) {
        const Element x = circle_exact(i, 16);
        const auto p = weight_product(w, circle_exact(1, 2), 2, x);
        REQUIRE(p.exact);
        CHECK(*p.exact == 1);
        CHECK(*weight_product(w, circle_exact(1, 2), 1, x).exact == *w.eval_exact(x));
    }
}

TEST_CASE("cocycle identity")
{
    std::mt19937_64 rng(23);
    const auto w = Weight::step(two_half());
    const CircleGroup g;
    for (int t = 0; t < 200; ++t) {
        const Element a = circle_exact(static_cast<long long>(rng() % 97), 97);
        const Element x = circle_exact(static_cast<long long>(rng() % 101), 101);
        const long long m = 1 + static_cast<long long>(rng() % 9), n = 1 + static_cast<long long>(rng() % 9);
        const auto lhs = weight_product(w, a, m + n, x);
        const auto rhs = *weight_product(w, a, n, x).exact *
                         *weight_product(w, a, m, mul(g, x, pow(g, a, -n))).exact;
        REQUIRE(lhs.exact);
        CHECK(*lhs.exact == rhs);
    }

    const auto s = Weight::expression(Expression::parse("exp(sin(2*pi*x))"));
    const Element a = CircleElement::from_double(golden);
    for (int t = 0; t < 200; ++t) {
        const Element x = CircleElement::from_double(static_cast<double>(rng() % 1000) / 1000.0);
        const long long m = 1 + static_cast<long long>(rng() % 20), n = 1 + static_cast<long long>(rng() % 20);
        const double lhs = weight_product(s, a, m + n, x).value;
        const double rhs = weight_product(s, a, n, x).value * weight_product(s, a, m, mul(g, x, pow(g, a, -n))).value;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("log integrals")
{
    const auto s = log_integral(Weight::expression(Expression::parse("exp(sin(2*pi*x))")));
    CHECK(std::abs(s.value) < 1e-6);
    const auto shifted = log_integral(Weight::expression(Expression::parse("exp(sin(2*pi*x) + 0.1)")));
    CHECK(std::abs(shifted.value - 0.1) < 1e-6);

    const auto two = log_integral(Weight::constant(CircleGroup{}, 2));
    REQUIRE(two.exact);
    CHECK(two.value == doctest::Approx(std::log(2.0)));

    const auto step = log_integral(Weight::step(two_half()));
    REQUIRE(step.exact);
    CHECK(step.exact->is_zero());
    CHECK(step.value == 0.0);
}

TEST_CASE("log mass arithmetic")
{
    const auto a = LogMass::of(2, Rational(1, 2));
    const auto b = LogMass::of(Rational(1, 2), Rational(1, 2));
    CHECK((a + b).is_zero());
    CHECK(LogMass::of(4, Rational(1, 6)).normalized() == LogMass::of(2, Rational(1, 3)));
    CHECK((a + a).value() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("step approximation")
{
    const auto c = step_approx(Expression::parse("5/2"), 0.1, ApproxSide::Above);
    CHECK(c.size() == 1);
    CHECK(c.eval(0.3) == 2.5);

    const auto w = Expression::parse("sin(2*pi*x)");
    const auto phi = step_approx(w, 0.5, ApproxSide::Above);
    CHECK(phi.size() <= 5);
    double lo = 1.0, hi = -1.0;
    for (int i = 0; i < 100000; ++i) {
        const double x = (i + 0.5) / 100000.0;
        const double d = phi.eval(x) - w.eval(x);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(lo >= 0.0);
    CHECK(hi <= 0.5);
    CHECK(std::abs(phi.integral() - 0.0) <= 0.5);

    const auto below = step_approx(w, 0.1, ApproxSide::Below);
    for (int i = 0; i < 20000; ++i) {
        const double x = (i + 0.5) / 20000.0;
        const double d = w.eval(x) - below.eval(x);
        REQUIRE(d >= 0.0);
        REQUIRE(d <= 0.1);
    }
}

TEST_CASE("sandwich check")
{
    const auto a = CircleElement::from_double(golden);
    CHECK(sandwich_check(StepFunction::constant(Rational(3)), a, 0.05, 1000).holds);
    CHECK(sandwich_check(two_half(), a, 0.05, 10000).holds);
    // a = 1/4 splits every orbit evenly between the two pieces, a = 1/3 cannot
    CHECK(sandwich_check(two_half(), CircleElement::from_rational(Rational(1, 4)), 0.05, 10000).holds);
    const auto torsion = sandwich_check(two_half(), CircleElement::from_rational(Rational(1, 3)), 0.05, 10000);
    CHECK_FALSE(torsion.holds);
    CHECK(torsion.count_deviation > 0.1);
}

TEST_CASE("translation operator on grids")
{
    const FiniteGroup z4 = cyclic_group(4);
    const auto two = Weight::constant(z4, 2);
    const auto f = DiscretizedFunction::delta(z4, 4, 0);
    const auto g = apply_operator(two, FiniteElement{1}, f);
    REQUIRE(g.exact);
    CHECK(*g.exact == std::vector<Rational>{0, 2, 0, 0});

    const auto w = Weight::step(two_half());
    const auto ones = DiscretizedFunction::exact_circle({1, 1, 1, 1});
    const auto h = apply_operator(w, circle_exact(1, 2), ones);
    REQUIRE(h.exact);
    CHECK(*h.exact == std::vector<Rational>{2, 2, Rational(1, 2), Rational(1, 2)});

    const auto unit = Weight::constant(CircleGroup{}, 1);
    CHECK(apply_operator(unit, circle_exact(0, 1), ones).exact == ones.exact);
    CHECK_THROWS_AS(apply_operator(w, circle_exact(1, 3), ones), GridMismatch);
}

TEST_CASE("operator power identity")
{
    const FiniteGroup z4 = cyclic_group(4);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> values;
        for (int i = 0; i < 4; ++i)
            values.emplace_back(1 + static_cast<long long>(rng() % 7), 1 + static_cast<long long>(rng() % 5));
        const auto w = Weight::finite_table(z4, values);
        const auto r = operator_power_identity_check(w, FiniteElement{1}, 3, DiscretizedFunction::delta(z4, 4, 0));
        CHECK(r.exact);
        CHECK(r.exact_zero);
        CHECK(operator_power_identity_check(w, FiniteElement{1}, 1, DiscretizedFunction::delta(z4, 4, 2)).exact_zero);
    }

    const auto s = Weight::expression(Expression::parse("exp(sin(2*pi*x))"));
    std::vector<std::complex<double>> vals;
    for (int i = 0; i < 64; ++i)
        vals.emplace_back(std::cos(i * 0.3), std::sin(i * 0.7));
    const auto r = operator_power_identity_check(s, circle_exact(1, 64), 5, DiscretizedFunction::circle(vals));
    CHECK(r.deviation <= 1e-9);
}
