#include "hclab/weight.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/equidist.hpp"
#include "hclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hclab {

LogMass LogMass::of(const Rational& value, const Rational& mass)
{
    if (value <= 0)
        throw NonPositiveWeight("logarithm of non-positive value " + to_string(value));
    if (mass < 0)
        throw std::invalid_argument("negative mass");
    LogMass m;
    m.product = pow(value, static_cast<std::uint64_t>(numerator(mass)));
    m.denominator = boost::multiprecision::denominator(mass);
    if (numerator(mass) == 0)
        m.product = 1;
    return m;
}

double LogMass::value() const
{
    return log_rational(product) / to_double(Rational(denominator));
}

LogMass& LogMass::operator+=(const LogMass& other)
{
    const BigInt g = boost::multiprecision::gcd(denominator, other.denominator);
    const BigInt l = denominator / g * other.denominator;
    product = pow(product, static_cast<std::uint64_t>(l / denominator)) *
              pow(other.product, static_cast<std::uint64_t>(l / other.denominator));
    denominator = l;
    return *this;
}

namespace {

// exact integer e-th root of v >= 0, if there is one
bool exact_root(const BigInt& v, unsigned e, BigInt& out)
{
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, e) < v)
        hi *= 2;
    while (lo < hi) {
        const BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, e) < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    out = lo;
    return boost::multiprecision::pow(lo, e) == v;
}

} // namespace

LogMass LogMass::normalized() const
{
    LogMass m = *this;
    if (m.product == 1) {
        m.denominator = 1;
        return m;
    }
    // ln(P)/D = ln(P^{1/q})/(D/q) whenever P is a perfect q-th power
    BigInt rest = m.denominator;
    for (unsigned q = 2; rest > 1 && q <= 1024; ++q) {
        while (rest % q == 0) {
            rest /= q;
            BigInt n, d;
            if (!exact_root(numerator(m.product), q, n) ||
                !exact_root(boost::multiprecision::denominator(m.product), q, d))
                continue;
            m.product = Rational(n, d);
            m.denominator /= q;
        }
    }
    return m;
}

Weight::Weight(GroupContext g, Body b) : group_(std::move(g)), body_(std::move(b)) {}

Weight Weight::expression(Expression e)
{
    Weight w(CircleGroup{}, e);
    constexpr int grid = 4096;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < grid; ++i) {
        const double v = e.eval(static_cast<double>(i) / grid);
        if (!(v > 0.0) || !std::isfinite(v))
            throw NonPositiveWeight("weight \"" + e.text() + "\" is not positive and finite at x = " +
                                    std::to_string(static_cast<double>(i) / grid));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    w.bounds_ = {lo, hi};
    return w;
}

Weight Weight::step(StepFunction f)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const StepPiece& p : f.pieces()) {
        if (!(p.value > 0.0) || (p.exact && *p.exact <= 0))
            throw NonPositiveWeight("step weight value " + std::to_string(p.value) + " is not positive");
        lo = std::min(lo, p.value);
        hi = std::max(hi, p.value);
    }
    Weight w(CircleGroup{}, std::move(f));
    w.bounds_ = {lo, hi};
    return w;
}

namespace {

Interval table_bounds(const std::vector<Rational>& values)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Rational& v : values) {
        if (v <= 0)
            throw NonPositiveWeight("weight table value " + to_string(v) + " is not positive");
        lo = std::min(lo, to_double(v));
        hi = std::max(hi, to_double(v));
    }
    return {lo, hi};
}

} // namespace

Weight Weight::coset_table(const PAdicContext& ctx, CosetTable table)
{
    ctx.validate();
    if (table.level > ctx.digits())
        throw WindowExceeded("weight table level exceeds the stored precision");
    if (table.values.size() != ctx.power(table.level))
        throw std::invalid_argument("weight table needs p^level values");
    const Interval b = table_bounds(table.values);
    Weight w(ctx, std::move(table));
    w.bounds_ = b;
    return w;
}

Weight Weight::finite_table(const FiniteGroup& g, std::vector<Rational> values)
{
    if (values.size() != g.order())
        throw std::invalid_argument("finite weight table needs one value per element");
    const Interval b = table_bounds(values);
    Weight w(g, std::move(values));
    w.bounds_ = b;
    return w;
}

Weight Weight::constant(const GroupContext& g, const Rational& c)
{
    return std::visit(detail::overloaded{
                          [&](const FiniteGroup& f) { return finite_table(f, std::vector<Rational>(f.order(), c)); },
                          [&](const CircleGroup&) { return step(StepFunction::constant(c)); },
                          [&](const PAdicContext& ctx) { return coset_table(ctx, CosetTable{0, {c}, true}); },
                      },
                      g);
}

bool Weight::is_exact() const
{
    if (const auto* e = as_expression())
        return e->exact_constant().has_value();
    if (const auto* s = as_step())
        return s->is_exact();
    return true;
}

double Weight::eval(double x) const
{
    if (const auto* e = as_expression())
        return e->eval(fold_unit(x));
    if (const auto* s = as_step())
        return s->eval(fold_unit(x));
    throw ContextMismatch("weight is not defined on the circle");
}

double Weight::eval(const Element& x) const
{
    check_member(group_, x);
    if (const auto* c = std::get_if<CircleElement>(&x)) {
        if (const auto* s = as_step(); s && c->is_exact())
            return s->pieces()[s->piece_at(*c->exact())].value;
        return eval(c->angle());
    }
    return to_double(*eval_exact(x));
}

std::optional<Rational> Weight::eval_exact(const Element& x) const
{
    check_member(group_, x);
    return std::visit(
        detail::overloaded{
            [&](const Expression& e) -> std::optional<Rational> { return e.exact_constant(); },
            [&](const StepFunction& s) -> std::optional<Rational> {
                const auto& c = std::get<CircleElement>(x);
                if (!c.is_exact())
                    return std::nullopt;
                return s.pieces()[s.piece_at(*c.exact())].exact;
            },
            [&](const CosetTable& t) -> std::optional<Rational> {
                return t.values[std::get<PAdicNumber>(x).residue_at(t.level)];
            },
            [&](const std::vector<Rational>& t) -> std::optional<Rational> { return t[std::get<FiniteElement>(x)]; },
        },
        body_);
}

std::string Weight::describe() const
{
    return std::visit(detail::overloaded{
                          [](const Expression& e) { return e.text(); },
                          [](const StepFunction& s) { return "step(" + std::to_string(s.size()) + " pieces)"; },
                          [](const CosetTable& t) {
                              return "coset_table(level " + std::to_string(t.level) + ")";
                          },
                          [](const std::vector<Rational>& t) {
                              return "finite_table(" + std::to_string(t.size()) + ")";
                          },
                      },
                      body_);
}

WeightProduct weight_product(const Weight& w, const Element& a, long long n, const Element& x)
{
    if (n < 1)
        throw std::invalid_argument("weight_product needs n >= 1");
    const GroupContext& g = w.group();
    check_member(g, a);
    check_member(g, x);
    WeightProduct out;

    if (const auto* c = std::get_if<CircleElement>(&x)) {
        const auto& ca = std::get<CircleElement>(a);
        if (w.is_exact() && c->is_exact() && ca.is_exact()) {
            Rational prod = 1;
            Rational y = *c->exact();
            for (long long j = 0; j < n; ++j) {
                prod *= *w.eval_exact(CircleElement::from_rational(y));
                y = frac(y - *ca.exact());
            }
            out.exact = prod;
            out.value = to_double(prod);
            return out;
        }
        double prod = 1.0;
        for (long long j = 0; j < n; ++j)
            prod *= w.eval(fold_unit(c->angle() + orbit_angle(ca, j)));
        out.value = prod;
        return out;
    }

    const Element step = inverse(g, a);
    Element y = x;
    Rational prod = 1;
    for (long long j = 0; j < n; ++j) {
        prod *= *w.eval_exact(y);
        y = mul(g, y, step);
    }
    out.exact = prod;
    out.value = to_double(prod);
    return out;
}

LogIntegral log_integral(const Weight& w, std::size_t nodes)
{
    LogIntegral out;
    if (const auto* e = w.as_expression()) {
        if (nodes < 2 || nodes % 2 != 0)
            throw std::invalid_argument("quadrature needs an even node count");
        auto midpoint = [&](std::size_t m) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
                const double v = e->eval(x);
                if (!(v > 0.0) || !std::isfinite(v))
                    throw NonPositiveWeight("weight \"" + e->text() + "\" is not positive at x = " + std::to_string(x));
                sum += std::log(v);
            }
            return sum / static_cast<double>(m);
        };
        out.value = midpoint(nodes);
        out.consistency = std::abs(out.value - midpoint(nodes / 2));
        out.nodes = nodes;
        return out;
    }

    LogMass total;
    if (const auto* s = w.as_step()) {
        if (!s->is_exact()) {
            double v = 0.0;
            for (const StepPiece& p : s->pieces())
                v += to_double(p.set.measure()) * std::log(p.value);
            out.value = v;
            return out;
        }
        for (const StepPiece& p : s->pieces())
            total += LogMass::of(*p.exact, p.set.measure());
    } else if (const auto* t = w.as_table()) {
        Rational prod = 1;
        for (const Rational& v : t->values)
            prod *= v;
        total = LogMass{prod, BigInt(t->values.size())};
    } else {
        const auto& table = *w.as_finite_table();
        Rational prod = 1;
        for (const Rational& v : table)
            prod *= v;
        total = LogMass{prod, BigInt(table.size())};
    }
    out.exact = total;
    out.value = total.value();
    return out;
}

} // namespace hclab
