#pragma once

#include "hclab/rational.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace hclab {

/// Closed interval of reals; bounds may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    double width() const noexcept { return hi - lo; }
};

/// Real expression in one variable x.
///
/// Grammar: numbers, x, pi, + - * /, unary minus, parentheses and the
/// functions exp, ln, sin, cos, sqrt. Example: "exp(sin(2*pi*x) + 0.1)".
class Expression {
public:
    struct Node;

    /// Throws ParseError.
    static Expression parse(std::string_view text);
    static Expression constant(const Rational& c);

    const std::string& text() const noexcept { return text_; }

    double eval(double x) const;

    /// Natural interval extension, widened outward so the true range of the
    /// expression over `x` is always inside the result.
    Interval enclose(Interval x) const;

    bool depends_on_x() const;
    /// The exact value when the expression is a constant built from rational
    /// literals with + - * / only.
    std::optional<Rational> exact_constant() const;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

/// Test function on the circle: a character e^{2 pi i k x}, or a real expression.
class TestFunction {
public:
    static TestFunction character(long long k);
    static TestFunction expression(Expression e);

    std::complex<double> eval(double x) const;
    std::optional<long long> character_index() const noexcept { return k_; }
    /// sup |f|; exact for characters, grid estimate otherwise.
    double sup_norm() const;
    /// Integral over the circle: exact for characters and constants, midpoint
    /// quadrature at 2^16 points otherwise.
    std::complex<double> mean() const;
    std::string describe() const;

private:
    std::optional<long long> k_;
    std::optional<Expression> expr_;
};

} // namespace hclab
