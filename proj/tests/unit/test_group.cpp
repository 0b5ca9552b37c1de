#include "hclab/errors.hpp"
#include "hclab/group.hpp"

#include <doctest.h>

#include <random>

using namespace hclab;

namespace {

PAdicNumber digits(const PAdicContext& ctx, std::vector<unsigned> d)
{
    return PAdicNumber::from_digits(ctx, d);
}

} // namespace

TEST_CASE("rational parsing and helpers")
{
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK(frac(Rational(-1, 4)) == Rational(3, 4));
    CHECK(floor(Rational(-1, 4)) == -1);
    CHECK(exact_from_double(0.375) == Rational(3, 8));
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("circle multiplication folds mod 1")
{
    const CircleGroup g;
    const Element x = CircleElement::from_rational(Rational(3, 4));
    const Element y = CircleElement::from_rational(Rational(1, 2));
    CHECK(std::get<CircleElement>(mul(g, x, y)).exact() == Rational(1, 4));
    CHECK(std::get<CircleElement>(pow(g, CircleElement::from_rational(Rational(1, 4)), -1)).exact() ==
          Rational(3, 4));

    const auto f = CircleElement::from_double(0.75);
    CHECK(circle::mul(f, CircleElement::from_double(0.5)).angle() == doctest::Approx(0.25));
    CHECK_FALSE(circle::mul(f, CircleElement::from_double(0.5)).is_exact());
}

TEST_CASE("p-adic addition matches integers mod p^K")
{
    const PAdicContext z3{3, 2, 0};
    const auto sum = digits(z3, {1, 2}) + digits(z3, {2, 0});
    CHECK(sum.is_zero());
    CHECK(digits(z3, {1, 2}).residue() == 7);

    std::mt19937_64 rng(11);
    const PAdicContext z5{5, 6, 0};
    const std::uint64_t mod = 15625;
    for (int i = 0; i < 500; ++i) {
        const auto a = static_cast<long long>(rng() % 100000) - 50000;
        const auto b = static_cast<long long>(rng() % 100000) - 50000;
        auto m = [&](long long v) { return static_cast<std::uint64_t>(((v % (long long)mod) + (long long)mod) % (long long)mod); };
        const auto x = PAdicNumber::from_integer(z5, a);
        const auto y = PAdicNumber::from_integer(z5, b);
        CHECK((x + y).residue() == m(a + b));
        CHECK((x - y).residue() == m(a - b));
        CHECK((x * y).residue() == m((a % 15625) * (b % 15625)));
    }
}

TEST_CASE("p-adic rationals and valuations")
{
    const PAdicContext z5{5, 4, 0};
    CHECK(PAdicNumber::from_integer(z5, 100).valuation() == 2);
    CHECK(PAdicNumber::from_integer(PAdicContext{3, 4, 0}, 1).valuation() == 0);
    CHECK_FALSE(PAdicNumber(PAdicContext{3, 4, 0}).valuation().has_value());
    CHECK(PAdicNumber::from_integer(z5, 100).norm() == Rational(1, 25));

    const auto half = PAdicNumber::from_rational(z5, Rational(1, 2));
    CHECK((half.scaled(2)).residue() == 1);
    CHECK_THROWS(PAdicNumber::from_rational(z5, Rational(1, 5)));

    const PAdicContext q3{3, 3, 1};
    const auto third = PAdicNumber::from_rational(q3, Rational(1, 3));
    CHECK(third.valuation() == -1);
    CHECK((third.scaled(3)).valuation() == 0);
    CHECK(third.to_string() == "1/3");
    CHECK_THROWS(PAdicNumber::from_rational(q3, Rational(1, 9)));
}

TEST_CASE("pow and element order")
{
    const FiniteGroup z6 = cyclic_group(6);
    CHECK(z6.pow(2, 4) == 2);
    CHECK(z6.pow(5, 0) == z6.identity());
    CHECK(z6.element_order(2) == 3);
    CHECK(z6.element_order(0) == 1);
    const FiniteGroup v4 = klein_four_group();
    for (FiniteElement a = 1; a < 4; ++a)
        CHECK(v4.element_order(a) == 2);

    const PAdicContext z3{3, 4, 0};
    const auto one = PAdicNumber::from_integer(z3, 1);
    CHECK(std::get<PAdicNumber>(pow(z3, one, 7)).residue() == 7);
    CHECK(std::get<PAdicNumber>(pow(z3, one, -1)).residue() == 80);
    CHECK(pow(z3, one, 0) == identity(z3));
}

TEST_CASE("torsion and generation")
{
    const CircleGroup c;
    CHECK(is_torsion(c, CircleElement::from_rational(Rational(1, 4))));
    CHECK_FALSE(is_torsion(c, CircleElement::from_double((std::sqrt(5.0) - 1) / 2)));
    const PAdicContext z3{3, 4, 0};
    CHECK_FALSE(is_torsion(z3, PAdicNumber::from_integer(z3, 9)));
    CHECK(is_torsion(z3, PAdicNumber(z3)));

    CHECK(cyclic_group(6).generates(1));
    CHECK_FALSE(cyclic_group(6).generates(2));
    for (FiniteElement a = 0; a < 4; ++a)
        CHECK_FALSE(klein_four_group().generates(a));
    for (const FiniteGroup& g : finite_group_catalog())
        if (g.order() > 1)
            CHECK_FALSE(g.generates(g.identity()));
}

TEST_CASE("catalog groups satisfy the group axioms")
{
    for (const FiniteGroup& g : finite_group_catalog()) {
        CAPTURE(g.name());
        const std::size_t n = g.order();
        for (FiniteElement x = 0; x < n; ++x) {
            CHECK(g.mul(g.identity(), x) == x);
            CHECK(g.mul(x, g.identity()) == x);
            CHECK(g.mul(x, g.inverse(x)) == g.identity());
            for (FiniteElement y = 0; y < n; ++y)
                for (FiniteElement z = 0; z < n; ++z)
                    REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
        }
    }
    CHECK(cyclic_group(12).is_cyclic());
    CHECK_FALSE(quaternion_group().is_cyclic());
    CHECK(finite_group_by_name("Z2xZ3").is_cyclic());
}

TEST_CASE("context mismatches are rejected")
{
    const PAdicContext z3{3, 4, 0};
    const PAdicContext z5{5, 4, 0};
    CHECK_THROWS_AS(PAdicNumber::from_integer(z3, 1) + PAdicNumber::from_integer(z5, 1), ContextMismatch);
    CHECK_THROWS_AS(mul(CircleGroup{}, PAdicNumber(z3), PAdicNumber(z3)), ContextMismatch);
    CHECK_THROWS_AS(check_member(cyclic_group(4), Element{FiniteElement{7}}), ContextMismatch);
    CHECK_THROWS(PAdicContext{4, 2, 0}.validate());
}
