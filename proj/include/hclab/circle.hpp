#pragma once

#include "hclab/rational.hpp"

#include <optional>

namespace hclab {

/// A point of the circle group R/Z, written additively.
///
/// Angles live in [0, 1). An element built from an exact rational keeps that
/// rational alongside the binary64 angle; that flag is the only thing torsion
/// detection looks at. An element built from a double is treated as
/// non-torsion even if the double happens to be dyadic.
class CircleElement {
public:
    CircleElement() = default;

    static CircleElement from_double(double angle);
    static CircleElement from_rational(const Rational& angle);

    double angle() const noexcept { return angle_; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    const std::optional<Rational>& exact() const noexcept { return exact_; }

    friend bool operator==(const CircleElement& a, const CircleElement& b)
    {
        if (a.exact_ && b.exact_)
            return *a.exact_ == *b.exact_;
        return a.angle_ == b.angle_ && a.exact_.has_value() == b.exact_.has_value();
    }

private:
    double angle_ = 0.0;
    std::optional<Rational> exact_ = Rational(0);
};

/// Folds into [0, 1).
double fold_unit(double x) noexcept;

/// Shortest distance between two angles on the circle.
double circular_distance(double x, double y) noexcept;

namespace circle {

CircleElement identity();
CircleElement mul(const CircleElement& x, const CircleElement& y);
CircleElement inverse(const CircleElement& x);

/// n * a by repeated doubling.
CircleElement pow(const CircleElement& a, long long n);

/// k * a mod 1 in one step; for binary64 angles the product error is
/// recovered with an fma so large k stays accurate.
CircleElement scaled(const CircleElement& a, long long k);
double scaled_angle(double a, long long k) noexcept;

/// True iff the element was built from an exact rational.
bool is_torsion(const CircleElement& a);

} // namespace circle

} // namespace hclab
