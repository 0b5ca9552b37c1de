#include "hclab/rational.hpp"

#include "hclab/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace hclab {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    BigInt value = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return negative ? BigInt(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(trim(s.substr(0, slash)), text);
        BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
            int_part.remove_prefix(1);
        BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
        BigInt digits = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        if (!frac_part.empty() && (frac_part.front() == '-' || frac_part.front() == '+'))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        Rational r = Rational(whole) + Rational(digits, scale);
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& r)
{
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

Rational exact_from_double(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("exact_from_double: non-finite value");
    if (x == 0.0)
        return Rational(0);
    int exponent = 0;
    double mantissa = std::frexp(x, &exponent);
    // mantissa * 2^53 is an integer for binary64
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational r(scaled);
    if (exponent > 0)
        r *= Rational(BigInt(1) << exponent);
    else if (exponent < 0)
        r /= Rational(BigInt(1) << -exponent);
    return r;
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

BigInt floor(const Rational& r)
{
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    BigInt q = num / den; // truncates toward zero
    if (num < 0 && q * den != num)
        q -= 1;
    return q;
}

Rational frac(const Rational& r)
{
    return r - Rational(floor(r));
}

namespace {

double log_bigint(const BigInt& n)
{
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    if (bits <= 1000)
        return std::log(n.convert_to<double>());
    const unsigned shift = bits - 60;
    BigInt top = n >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

} // namespace

double log_rational(const Rational& r)
{
    if (r <= 0)
        throw std::domain_error("log_rational: argument must be positive");
    return log_bigint(boost::multiprecision::numerator(r)) - log_bigint(boost::multiprecision::denominator(r));
}

Rational pow(const Rational& base, std::uint64_t exponent)
{
    Rational result = 1;
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1u)
            result *= b;
        exponent >>= 1u;
        if (exponent != 0)
            b *= b;
    }
    return result;
}

DoubleBracket::DoubleBracket(const Rational& r)
{
    double d = to_double(r);
    constexpr double inf = std::numeric_limits<double>::infinity();
    while (exact_from_double(d) > r)
        d = std::nextafter(d, -inf);
    for (;;) {
        double up = std::nextafter(d, inf);
        if (exact_from_double(up) <= r)
            d = up;
        else
            break;
    }
    below = d;
    exact = exact_from_double(d) == r;
}

} // namespace hclab
