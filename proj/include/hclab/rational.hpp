#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-7/12" or a finite decimal such as "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Every finite binary64 value is a dyadic rational; this returns it exactly.
Rational exact_from_double(double x);

double to_double(const Rational& r);

BigInt floor(const Rational& r);

/// r - floor(r), in [0, 1).
Rational frac(const Rational& r);

/// Natural logarithm of a strictly positive rational, accurate for
/// numerators and denominators far beyond the binary64 range.
double log_rational(const Rational& r);

Rational pow(const Rational& base, std::uint64_t exponent);

/// Largest binary64 value not exceeding r, plus whether it equals r.
///
/// Lets a double x be compared with r exactly:
///   x <  r  <=>  x < below || (x == below && !exact)
///   x >  r  <=>  x > below
struct DoubleBracket {
    double below = 0.0;
    bool exact = true;

    explicit DoubleBracket(const Rational& r);
    DoubleBracket() = default;

    bool less(double x) const noexcept { return x < below || (x == below && !exact); }
    bool greater(double x) const noexcept { return x > below; }
    bool equal(double x) const noexcept { return exact && x == below; }
};

} // namespace hclab
