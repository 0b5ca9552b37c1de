#include "hclab/borel.hpp"
#include "hclab/errors.hpp"

#include <doctest.h>

#include <random>

using namespace hclab;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

IntervalSet random_set(std::mt19937_64& rng)
{
    IntervalSet s;
    const int parts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < parts; ++i) {
        long long a = static_cast<long long>(rng() % 24), b = static_cast<long long>(rng() % 24);
        if (a > b)
            std::swap(a, b);
        if (rng() % 5 == 0)
            s = s.unite(IntervalSet::point(q(a, 24)));
        else if (a < b)
            s = s.unite(IntervalSet::interval(q(a, 24), q(b, 24), rng() % 2, rng() % 2));
    }
    return s;
}

// probe every breakpoint and every gap midpoint of the 1/48 grid
std::vector<Rational> probes()
{
    std::vector<Rational> out;
    for (long long i = 0; i < 48; ++i)
        out.push_back(q(i, 48));
    for (long long i = 0; i < 48; ++i)
        out.push_back(q(2 * i + 1, 96));
    return out;
}

} // namespace

TEST_CASE("interval union and measure")
{
    const auto a = IntervalSet::interval(0, q(1, 4), false, false);
    const auto b = IntervalSet::interval(q(1, 2), q(3, 4), true, true);
    CHECK(a.unite(b).measure() == q(1, 2));

    const auto left = IntervalSet::interval(0, q(1, 2), true, false);
    const auto right = IntervalSet::interval(q(1, 2), 1, true, false);
    CHECK(left.unite(right) == IntervalSet::full());
    CHECK(left.unite(right).measure() == 1);
}

TEST_CASE("interval complement")
{
    const auto half = IntervalSet::interval(0, q(1, 2), true, false);
    const auto c = half.complement();
    CHECK(c.measure() == q(1, 2));
    CHECK(c.contains(q(1, 2)));
    CHECK_FALSE(c.contains(Rational(0)));

    const auto pt = IntervalSet::point(q(1, 2)).complement();
    CHECK(pt.measure() == 1);
    CHECK_FALSE(pt.contains(q(1, 2)));
    CHECK(pt.contains(Rational(0)));
    CHECK(pt.contains(q(3, 4)));
}

TEST_CASE("membership at endpoints")
{
    const auto half_open = IntervalSet::interval(0, q(1, 2), true, false);
    CHECK(half_open.contains(Rational(0)));
    CHECK_FALSE(half_open.contains(q(1, 2)));
    CHECK(half_open.contains(0.0));
    CHECK_FALSE(half_open.contains(0.5));
    CHECK(half_open.contains(0.49999999999999994));
    CHECK_FALSE(IntervalSet::interval(0, q(1, 2), false, false).contains(Rational(0)));
    CHECK(half_open.measure() == q(1, 2));
    CHECK(measure(BorelSet{IntervalSet()}) == 0);
}

TEST_CASE("form classification")
{
    CHECK(IntervalSet::interval(0, q(1, 2), true, true).form() == FormTag::Form1);
    CHECK(IntervalSet::point(q(1, 2)).form() == FormTag::Form2);
    const auto mixed = IntervalSet::interval(0, q(1, 4), true, true).unite(IntervalSet::point(q(1, 2)));
    CHECK(mixed.form() == FormTag::Form3);
    CHECK(IntervalSet().form() == FormTag::Form2);
}

TEST_CASE("random interval sets obey the set laws pointwise")
{
    std::mt19937_64 rng(3);
    const auto pts = probes();
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_set(rng);
        const auto b = random_set(rng);
        const auto u = a.unite(b), i = a.intersect(b), c = a.complement(), d = a.difference(b);
        CHECK(u.measure() + i.measure() == a.measure() + b.measure());
        CHECK(c.measure() == 1 - a.measure());
        for (const Rational& x : pts) {
            REQUIRE(u.contains(x) == (a.contains(x) || b.contains(x)));
            REQUIRE(i.contains(x) == (a.contains(x) && b.contains(x)));
            REQUIRE(c.contains(x) == !a.contains(x));
            REQUIRE(d.contains(x) == (a.contains(x) && !b.contains(x)));
        }
        CHECK(c.complement() == a);
    }
}

TEST_CASE("translation moves membership")
{
    const auto k = IntervalSet::interval(q(1, 8), q(3, 8), true, false);
    const auto t = k.translated(q(3, 4));
    CHECK(t.contains(q(7, 8)));
    CHECK(t.contains(Rational(0)));
    CHECK_FALSE(t.contains(q(1, 8)));
    CHECK(t.measure() == k.measure());
}

TEST_CASE("ball sets merge siblings")
{
    const PAdicContext z3{3, 3, 0};
    BallSet s(z3);
    for (int r = 0; r < 3; ++r)
        s = s.unite(BallSet::ball(PAdicNumber::from_integer(z3, r), 1));
    CHECK(s == BallSet::whole(z3));
    REQUIRE(s.balls().size() == 1);
    CHECK(s.balls()[0].level == 0);

    const PAdicContext z3k2{3, 2, 0};
    const auto c = BallSet::ball(PAdicNumber(z3k2), 1).complement();
    CHECK(c.measure() == q(2, 3));
    CHECK(c.balls().size() == 2);
    CHECK(BallSet::ball(PAdicNumber(z3k2), 2).measure() == q(1, 9));
    CHECK(BallSet::ball(PAdicNumber::from_integer(z3k2, 1), 1).contains(PAdicNumber::from_integer(z3k2, 7)));
    CHECK_THROWS_AS(BallSet::ball(PAdicNumber(z3k2), -1), WindowExceeded);
}

TEST_CASE("ball sets agree with residue enumeration")
{
    const PAdicContext ctx{2, 4, 1};
    std::mt19937_64 rng(5);
    auto random_balls = [&] {
        BallSet s(ctx);
        for (int i = 0; i < 3; ++i) {
            const auto c = PAdicNumber::from_residue(ctx, rng() % ctx.modulus());
            s = s.unite(BallSet::ball(c, static_cast<int>(rng() % 6) - 1));
        }
        return s;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_balls();
        const auto b = random_balls();
        const auto u = a.unite(b), i = a.intersect(b), c = a.complement();
        Rational mu = 0, mi = 0, mc = 0;
        const Rational cell(1, static_cast<long long>(ctx.modulus()));
        for (std::uint64_t r = 0; r < ctx.modulus(); ++r) {
            const bool ia = a.contains_residue(r), ib = b.contains_residue(r);
            REQUIRE(u.contains_residue(r) == (ia || ib));
            REQUIRE(i.contains_residue(r) == (ia && ib));
            REQUIRE(c.contains_residue(r) == !ia);
            mu += (ia || ib) ? cell : 0;
            mi += (ia && ib) ? cell : 0;
            mc += !ia ? cell : 0;
        }
        CHECK(u.measure() == mu);
        CHECK(i.measure() == mi);
        CHECK(c.measure() == mc);
    }
}

TEST_CASE("finite subsets and the variant layer")
{
    const FiniteGroup z6 = cyclic_group(6);
    const BorelSet evens = FiniteSubset::of(6, {0, 2, 4});
    CHECK(measure(evens) == q(1, 2));
    CHECK(measure(set_complement(evens)) == q(1, 2));
    CHECK(contains(evens, Element{FiniteElement{4}}));
    const BorelSet moved = translate_inverse(z6, evens, Element{FiniteElement{1}});
    CHECK(contains(moved, Element{FiniteElement{1}}));
    CHECK(classify_form(whole_set(z6)) == FormTag::Form1);
    CHECK(classify_form(empty_set(z6)) == FormTag::Form2);
    CHECK_THROWS_AS(set_union(evens, BorelSet{IntervalSet()}), ContextMismatch);
}
