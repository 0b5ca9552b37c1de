#include "hclab/expression.hpp"

#include "hclab/circle.hpp"
#include "hclab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace hclab {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Ln, Sin, Cos, Sqrt };

struct Expression::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::optional<Rational> exact;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

constexpr double inf = std::numeric_limits<double>::infinity();

NodePtr leaf(double v, std::optional<Rational> exact)
{
    auto n = std::make_shared<Expression::Node>();
    n->value = v;
    n->exact = std::move(exact);
    return n;
}

NodePtr node(Op op, NodePtr a, NodePtr b = nullptr)
{
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse()
    {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("expression \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = node(Op::Add, lhs, term());
            else if (eat('-'))
                lhs = node(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = node(Op::Mul, lhs, unary());
            else if (eat('/'))
                lhs = node(Op::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary()
    {
        if (eat('-'))
            return node(Op::Neg, unary());
        if (eat('+'))
            return unary();
        return primary();
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "x")
                return node(Op::Var, nullptr);
            if (name == "pi")
                return leaf(std::numbers::pi, std::nullopt);
            Op op;
            if (name == "exp")
                op = Op::Exp;
            else if (name == "ln")
                op = Op::Ln;
            else if (name == "sin")
                op = Op::Sin;
            else if (name == "cos")
                op = Op::Cos;
            else if (name == "sqrt")
                op = Op::Sqrt;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            if (!eat('('))
                fail("expected '(' after " + std::string(name));
            NodePtr arg = expr();
            if (!eat(')'))
                fail("expected ')'");
            return node(op, arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        bool has_exponent = false;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < s_.size() && (s_[q] == '+' || s_[q] == '-'))
                ++q;
            if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
                has_exponent = true;
                pos_ = q;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
        }
        const std::string_view lit = s_.substr(start, pos_ - start);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
        if (ec != std::errc() || ptr != lit.data() + lit.size())
            fail("bad number '" + std::string(lit) + "'");
        std::optional<Rational> exact;
        if (!has_exponent)
            exact = parse_rational(lit);
        return leaf(v, std::move(exact));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double x)
{
    switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x;
    case Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Op::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case Op::Neg: return -eval_node(*n.lhs, x);
    case Op::Exp: return std::exp(eval_node(*n.lhs, x));
    case Op::Ln: return std::log(eval_node(*n.lhs, x));
    case Op::Sin: return std::sin(eval_node(*n.lhs, x));
    case Op::Cos: return std::cos(eval_node(*n.lhs, x));
    case Op::Sqrt: return std::sqrt(eval_node(*n.lhs, x));
    }
    return 0.0;
}

double down(double v, int ulps = 2)
{
    for (int i = 0; i < ulps; ++i)
        v = std::nextafter(v, -inf);
    return v;
}

double up(double v, int ulps = 2)
{
    for (int i = 0; i < ulps; ++i)
        v = std::nextafter(v, inf);
    return v;
}

Interval widen(Interval r, int ulps = 2)
{
    return {down(r.lo, ulps), up(r.hi, ulps)};
}

Interval mul(Interval a, Interval b)
{
    const double c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = inf, hi = -inf;
    for (double v : c) {
        if (std::isnan(v))
            v = 0.0; // 0 * inf
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return widen({lo, hi}, 1);
}

// sin over [lo, hi]; shift = pi/2 turns it into cos
Interval sin_range(Interval a, double shift)
{
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.hi - a.lo >= 2 * std::numbers::pi)
        return {-1.0, 1.0};
    const double s0 = std::sin(a.lo + shift);
    const double s1 = std::sin(a.hi + shift);
    double lo = std::min(s0, s1);
    double hi = std::max(s0, s1);
    // critical points t + shift = pi/2 + k pi; the argument rounding is absorbed by a margin
    const double margin = 1e-12 * (1.0 + std::max(std::abs(a.lo), std::abs(a.hi)));
    const double k_lo = std::ceil((a.lo - margin + shift - std::numbers::pi / 2) / std::numbers::pi);
    const double k_hi = std::floor((a.hi + margin + shift - std::numbers::pi / 2) / std::numbers::pi);
    for (double k = k_lo; k <= k_hi; ++k) {
        if (std::fmod(std::abs(k), 2.0) == 0.0)
            hi = 1.0;
        else
            lo = -1.0;
    }
    // endpoint values near a critical point may undershoot the extremum by the margin
    Interval r = widen({lo, hi}, 4);
    r.lo = std::max(-1.0, r.lo - 1e-15);
    r.hi = std::min(1.0, r.hi + 1e-15);
    return r;
}

Interval enclose_node(const Expression::Node& n, Interval x)
{
    switch (n.op) {
    case Op::Const: return widen({n.value, n.value}, n.exact ? 1 : 2);
    case Op::Var: return x;
    case Op::Add: {
        const Interval a = enclose_node(*n.lhs, x), b = enclose_node(*n.rhs, x);
        return widen({a.lo + b.lo, a.hi + b.hi}, 1);
    }
    case Op::Sub: {
        const Interval a = enclose_node(*n.lhs, x), b = enclose_node(*n.rhs, x);
        return widen({a.lo - b.hi, a.hi - b.lo}, 1);
    }
    case Op::Mul: return mul(enclose_node(*n.lhs, x), enclose_node(*n.rhs, x));
    case Op::Div: {
        const Interval a = enclose_node(*n.lhs, x), b = enclose_node(*n.rhs, x);
        if (b.lo <= 0.0 && b.hi >= 0.0)
            return {-inf, inf};
        return mul(a, widen({1.0 / b.hi, 1.0 / b.lo}, 1));
    }
    case Op::Neg: {
        const Interval a = enclose_node(*n.lhs, x);
        return {-a.hi, -a.lo};
    }
    case Op::Exp: {
        const Interval a = enclose_node(*n.lhs, x);
        return widen({std::exp(a.lo), std::exp(a.hi)});
    }
    case Op::Ln: {
        const Interval a = enclose_node(*n.lhs, x);
        if (a.hi <= 0.0)
            return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        return widen({a.lo <= 0.0 ? -inf : std::log(a.lo), std::log(a.hi)});
    }
    case Op::Sqrt: {
        const Interval a = enclose_node(*n.lhs, x);
        if (a.hi < 0.0)
            return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        return widen({a.lo <= 0.0 ? 0.0 : std::sqrt(a.lo), std::sqrt(a.hi)});
    }
    case Op::Sin: return sin_range(enclose_node(*n.lhs, x), 0.0);
    case Op::Cos: return sin_range(enclose_node(*n.lhs, x), std::numbers::pi / 2);
    }
    return {-inf, inf};
}

bool depends(const Expression::Node& n)
{
    if (n.op == Op::Var)
        return true;
    return (n.lhs && depends(*n.lhs)) || (n.rhs && depends(*n.rhs));
}

std::optional<Rational> exact_of(const Expression::Node& n)
{
    switch (n.op) {
    case Op::Const: return n.exact;
    case Op::Neg: {
        auto a = exact_of(*n.lhs);
        if (a)
            return -*a;
        return std::nullopt;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        auto a = exact_of(*n.lhs);
        auto b = exact_of(*n.rhs);
        if (!a || !b)
            return std::nullopt;
        if (n.op == Op::Add)
            return *a + *b;
        if (n.op == Op::Sub)
            return *a - *b;
        if (n.op == Op::Mul)
            return *a * *b;
        if (*b == 0)
            return std::nullopt;
        return *a / *b;
    }
    default: return std::nullopt;
    }
}

} // namespace

Expression Expression::parse(std::string_view text)
{
    Expression e;
    e.text_ = std::string(text);
    e.root_ = Parser(text).parse();
    return e;
}

Expression Expression::constant(const Rational& c)
{
    Expression e;
    e.text_ = to_string(c);
    e.root_ = leaf(to_double(c), c);
    return e;
}

double Expression::eval(double x) const
{
    return eval_node(*root_, x);
}

Interval Expression::enclose(Interval x) const
{
    return enclose_node(*root_, x);
}

bool Expression::depends_on_x() const
{
    return depends(*root_);
}

std::optional<Rational> Expression::exact_constant() const
{
    return exact_of(*root_);
}

TestFunction TestFunction::character(long long k)
{
    TestFunction f;
    f.k_ = k;
    return f;
}

TestFunction TestFunction::expression(Expression e)
{
    TestFunction f;
    f.expr_ = std::move(e);
    return f;
}

std::complex<double> TestFunction::eval(double x) const
{
    if (k_) {
        const double t = circle::scaled_angle(fold_unit(x), *k_);
        return std::polar(1.0, 2 * std::numbers::pi * t);
    }
    return expr_->eval(x);
}

double TestFunction::sup_norm() const
{
    if (k_)
        return 1.0;
    double m = 0.0;
    constexpr int grid = 1 << 16;
    for (int i = 0; i < grid; ++i)
        m = std::max(m, std::abs(expr_->eval((i + 0.5) / grid)));
    return m;
}

std::complex<double> TestFunction::mean() const
{
    if (k_)
        return *k_ == 0 ? 1.0 : 0.0;
    if (!expr_->depends_on_x())
        return expr_->eval(0.0);
    constexpr int grid = 1 << 16;
    double sum = 0.0;
    for (int i = 0; i < grid; ++i)
        sum += expr_->eval((i + 0.5) / grid);
    return sum / grid;
}

std::string TestFunction::describe() const
{
    if (k_)
        return "chi_" + std::to_string(*k_);
    return expr_->text();
}

} // namespace hclab
