#include "hclab/borel.hpp"
#include "hclab/equidist.hpp"
#include "hclab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hclab;

namespace {

const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

Element exact(long long n, long long d) { return CircleElement::from_rational(Rational(n, d)); }

OrbitSequence circle_orbit(const Element& a) { return OrbitSequence{CircleGroup{}, a, -1}; }

// count k in [1, N-1] with x + x_k in K by direct enumeration
long long brute_count(const IntervalSet& k, const Rational& a, const Rational& x, long long n)
{
    long long c = 0;
    for (long long j = 1; j < n; ++j)
        c += k.contains(frac(x - a * j));
    return c;
}

Rational brute_sup(const IntervalSet& k, const Rational& a, long long n, long long grid)
{
    Rational best = 0;
    for (long long j = 0; j < 2 * grid; ++j) {
        const Rational x(j, 2 * grid);
        const Rational dev = abs(Rational(brute_count(k, a, x, n), n) - k.measure());
        best = std::max(best, dev);
    }
    return best;
}

} // namespace

TEST_CASE("dens counts orbit visits")
{
    const auto half = IntervalSet::interval(0, Rational(1, 2), true, false);
    const auto seq = circle_orbit(exact(1, 4));
    CHECK(dens(half, seq, 5).value() == Rational(2, 5));
    CHECK(dens(IntervalSet(), seq, 5).value() == 0);
    CHECK(dens(IntervalSet::full(), seq, 7).value() == Rational(6, 7));

    CHECK(dens_translated(half, exact(0, 1), seq, 5).value() == dens(half, seq, 5).value());
    CHECK(dens_translated(half, exact(1, 2), seq, 5).value() == Rational(2, 5));

    const PAdicContext z3{3, 3, 0};
    const OrbitSequence pseq{z3, PAdicNumber::from_integer(z3, 1), -1};
    const BorelSet ball0 = BallSet::ball(PAdicNumber(z3), 1);
    CHECK(dens_translated(ball0, PAdicNumber::from_integer(z3, 1), pseq, 4).value() == Rational(1, 4));
}

TEST_CASE("sup deviation of the whole group is 1/N")
{
    for (long long n : {2LL, 10LL, 137LL}) {
        CHECK(sup_deviation(IntervalSet::full(), circle_orbit(exact(2, 7)), n).value == Rational(1, n));
        CHECK(sup_deviation(IntervalSet::full(), circle_orbit(CircleElement::from_double(golden)), n).value ==
              Rational(1, n));
        const FiniteGroup z6 = cyclic_group(6);
        CHECK(sup_deviation(FiniteSubset::whole(6), OrbitSequence{z6, FiniteElement{1}, -1}, n).value ==
              Rational(1, n));
    }
}

TEST_CASE("exact sup deviation matches a brute-force translate scan")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const long long den = 2 + static_cast<long long>(rng() % 11);
        const Rational a(static_cast<long long>(rng() % den), den);
        long long lo = static_cast<long long>(rng() % 12), hi = static_cast<long long>(rng() % 12);
        if (lo > hi)
            std::swap(lo, hi);
        const auto k = IntervalSet::interval(Rational(lo, 12), Rational(hi, 12), rng() % 2, rng() % 2);
        const long long n = 2 + static_cast<long long>(rng() % 30);
        const auto d = sup_deviation(k, circle_orbit(CircleElement::from_rational(a)), n);
        const long long grid = den * 12;
        CAPTURE(to_string(a));
        CAPTURE(n);
        CHECK(d.value == brute_sup(k, a, n, grid));
    }
}

TEST_CASE("golden rotation equidistributes homogeneously")
{
    const auto half = IntervalSet::interval(0, Rational(1, 2), true, false);
    const auto seq = circle_orbit(CircleElement::from_double(golden));
    const auto d = sup_deviation(half, seq, 10000);
    CHECK(to_double(d.value) <= 0.01);

    // sampled translates can only see a smaller deviation
    double sampled = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = i / 64.0;
        long long c = 0;
        for (long long k = 1; k < 10000; ++k)
            c += half.contains(fold_unit(x + orbit_angle(CircleElement::from_double(golden), k)));
        sampled = std::max(sampled, std::abs(c / 10000.0 - 0.5));
    }
    CHECK(sampled <= to_double(d.value) + 1e-12);
}

TEST_CASE("torsion rotation does not equidistribute")
{
    const auto k = IntervalSet::interval(0, Rational(1, 8), true, false);
    const auto seq = circle_orbit(exact(1, 4));
    for (long long n : {10LL, 100LL, 1000LL, 10000LL})
        CHECK(to_double(sup_deviation(k, seq, n).value) >= 0.05);
}

TEST_CASE("p-adic and finite sup deviation")
{
    const PAdicContext z3{3, 3, 0};
    const OrbitSequence seq{z3, PAdicNumber::from_integer(z3, 1), -1};
    const BorelSet ball = BallSet::ball(PAdicNumber(z3), 1);
    // the orbit of 1 cycles through residues mod 3, so at N = 3m+1 each class has m hits
    CHECK(sup_deviation(ball, seq, 10).value == Rational(1, 3) - Rational(3, 10));

    const FiniteGroup z4 = cyclic_group(4);
    const OrbitSequence fseq{z4, FiniteElement{2}, -1};
    // a = 2 only visits the subgroup {0, 2}
    CHECK(sup_deviation(FiniteSubset::of(4, {0, 2}), fseq, 9).value == Rational(1, 2));
    CHECK(sup_deviation(FiniteSubset::of(4, {0, 1}), fseq, 9).value == Rational(1, 18));
}

TEST_CASE("ergodic averages")
{
    const auto one = TestFunction::expression(Expression::parse("3"));
    CHECK(std::abs(ergodic_average(one, std::get<CircleElement>(exact(1, 3)), 10, 0.2) - std::complex<double>(2.7)) < 1e-12);
    const auto chi = TestFunction::character(1);
    CHECK(std::abs(ergodic_average(chi, std::get<CircleElement>(exact(1, 2)), 3, 0.0)) < 1e-12);

    const auto a = CircleElement::from_double(golden);
    for (long long n : {10LL, 100LL, 1000LL})
        for (int i = 0; i < 32; ++i)
            CHECK(std::abs(ergodic_average(chi, a, n, i / 32.0)) <= weyl_bound(1, a, n) + 1e-12);
}

TEST_CASE("Weyl bound values")
{
    CHECK(weyl_bound(1, std::get<CircleElement>(exact(1, 2)), 10) == doctest::Approx(0.1));
    CHECK(weyl_bound(1, std::get<CircleElement>(exact(1, 4)), 8) == doctest::Approx(2.0 / (8 * std::sqrt(2.0))));
    CHECK_THROWS_AS(weyl_bound(4, std::get<CircleElement>(exact(1, 4)), 8), FixedCharacter);
}

TEST_CASE("uniform convergence sweep")
{
    std::vector<double> xs;
    for (int i = 0; i < 128; ++i)
        xs.push_back(i / 128.0);
    const auto one = TestFunction::expression(Expression::parse("1"));
    for (const auto& row : uniform_convergence_sweep(one, CircleElement::from_double(golden), {10, 100, 1000}, xs))
        CHECK(row.deviation == doctest::Approx(1.0 / static_cast<double>(row.horizon)));

    const auto chi = TestFunction::character(1);
    for (const auto& row : uniform_convergence_sweep(chi, CircleElement::from_double(golden), {10, 100, 1000}, xs)) {
        REQUIRE(row.bound);
        CHECK(row.deviation <= *row.bound);
    }
    const auto third = std::get<CircleElement>(exact(1, 3));
    for (const auto& row : uniform_convergence_sweep(chi, third, {10, 100}, xs))
        CHECK(row.deviation <= 2.0 / (static_cast<double>(row.horizon) * std::sqrt(3.0)) + 1e-12);
}
