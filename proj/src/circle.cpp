#include "hclab/circle.hpp"

#include <cmath>
#include <stdexcept>

namespace hclab {

double fold_unit(double x) noexcept
{
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

double circular_distance(double x, double y) noexcept
{
    double d = fold_unit(x - y);
    return std::min(d, 1.0 - d);
}

CircleElement CircleElement::from_double(double angle)
{
    if (!std::isfinite(angle))
        throw std::domain_error("CircleElement: non-finite angle");
    CircleElement e;
    e.angle_ = fold_unit(angle);
    e.exact_.reset();
    return e;
}

CircleElement CircleElement::from_rational(const Rational& angle)
{
    CircleElement e;
    e.exact_ = frac(angle);
    e.angle_ = fold_unit(to_double(*e.exact_));
    return e;
}

namespace circle {

CircleElement identity()
{
    return CircleElement{};
}

CircleElement mul(const CircleElement& x, const CircleElement& y)
{
    if (x.is_exact() && y.is_exact())
        return CircleElement::from_rational(*x.exact() + *y.exact());
    return CircleElement::from_double(x.angle() + y.angle());
}

CircleElement inverse(const CircleElement& x)
{
    if (x.is_exact())
        return CircleElement::from_rational(-*x.exact());
    return CircleElement::from_double(-x.angle());
}

CircleElement pow(const CircleElement& a, long long n)
{
    CircleElement base = n < 0 ? inverse(a) : a;
    unsigned long long e = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
    CircleElement result = identity();
    if (!a.is_exact())
        result = CircleElement::from_double(0.0);
    while (e != 0) {
        if (e & 1ULL)
            result = mul(result, base);
        e >>= 1ULL;
        if (e != 0)
            base = mul(base, base);
    }
    return result;
}

double scaled_angle(double a, long long k) noexcept
{
    const double kd = static_cast<double>(k);
    const double hi = kd * a;
    const double lo = std::fma(kd, a, -hi);
    return fold_unit(fold_unit(hi) + lo);
}

CircleElement scaled(const CircleElement& a, long long k)
{
    if (a.is_exact())
        return CircleElement::from_rational(*a.exact() * k);
    return CircleElement::from_double(scaled_angle(a.angle(), k));
}

bool is_torsion(const CircleElement& a)
{
    return a.is_exact();
}

} // namespace circle

} // namespace hclab
