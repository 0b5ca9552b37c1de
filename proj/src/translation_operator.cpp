#include "hclab/translation_operator.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/errors.hpp"

#include <cmath>

namespace hclab {

Element DiscretizedFunction::point(std::size_t i) const
{
    return std::visit(detail::overloaded{
                          [&](const FiniteGroup&) -> Element { return FiniteElement{i}; },
                          [&](const CircleGroup&) -> Element {
                              return CircleElement::from_rational(
                                  Rational(static_cast<long long>(i), static_cast<long long>(values.size())));
                          },
                          [&](const PAdicContext& c) -> Element { return PAdicNumber::from_residue(c, i); },
                      },
                      group);
}

namespace {

std::vector<std::complex<double>> to_complex(const std::vector<Rational>& v)
{
    std::vector<std::complex<double>> out;
    out.reserve(v.size());
    for (const Rational& r : v)
        out.emplace_back(to_double(r), 0.0);
    return out;
}

} // namespace

DiscretizedFunction DiscretizedFunction::circle(std::vector<std::complex<double>> values)
{
    return {CircleGroup{}, 0, std::move(values), std::nullopt};
}

DiscretizedFunction DiscretizedFunction::exact_circle(std::vector<Rational> values)
{
    return {CircleGroup{}, 0, to_complex(values), std::move(values)};
}

DiscretizedFunction DiscretizedFunction::padic(const PAdicContext& ctx, unsigned level, std::vector<Rational> values)
{
    if (level > ctx.digits())
        throw WindowExceeded("grid level exceeds the stored precision");
    if (values.size() != ctx.power(level))
        throw std::invalid_argument("p-adic grid needs p^level samples");
    return {ctx, level, to_complex(values), std::move(values)};
}

DiscretizedFunction DiscretizedFunction::finite(const FiniteGroup& g, std::vector<Rational> values)
{
    if (values.size() != g.order())
        throw std::invalid_argument("finite grid needs one sample per element");
    return {g, 0, to_complex(values), std::move(values)};
}

DiscretizedFunction DiscretizedFunction::delta(const GroupContext& g, std::size_t size, std::size_t i, unsigned level)
{
    std::vector<Rational> v(size, Rational(0));
    v.at(i) = 1;
    return {g, level, to_complex(v), std::move(v)};
}

std::vector<std::size_t> translation_indices(const GroupContext& g, std::size_t size, unsigned level,
                                             const Element& a, GridMode mode)
{
    check_member(g, a);
    std::vector<std::size_t> idx(size);
    std::visit(
        detail::overloaded{
            [&](const FiniteGroup& f) {
                const FiniteElement ai = f.inverse(std::get<FiniteElement>(a));
                for (std::size_t i = 0; i < size; ++i)
                    idx[i] = f.mul(i, ai);
            },
            [&](const CircleGroup&) {
                const auto& c = std::get<CircleElement>(a);
                const auto m = static_cast<long long>(size);
                long long shift = 0;
                bool on_grid = false;
                if (c.is_exact()) {
                    const Rational s = *c.exact() * m;
                    on_grid = denominator(s) == 1;
                    if (on_grid)
                        shift = static_cast<long long>(numerator(s) % m);
                } else {
                    const double s = c.angle() * static_cast<double>(m);
                    on_grid = s == std::floor(s);
                    if (on_grid)
                        shift = static_cast<long long>(s) % m;
                }
                if (!on_grid) {
                    if (mode == GridMode::Strict)
                        throw GridMismatch("translation by " + std::to_string(c.angle()) +
                                           " does not preserve the grid of " + std::to_string(size) + " points");
                    shift = std::llround(c.angle() * static_cast<double>(m)) % m;
                }
                for (long long i = 0; i < m; ++i)
                    idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(((i - shift) % m + m) % m);
            },
            [&](const PAdicContext& ctx) {
                const std::uint64_t mod = ctx.power(level);
                const std::uint64_t s = std::get<PAdicNumber>(a).residue_at(level);
                for (std::size_t i = 0; i < size; ++i)
                    idx[i] = static_cast<std::size_t>((i + mod - s) % mod);
            },
        },
        g);
    return idx;
}

namespace {

void check_grid(const Weight& w, const DiscretizedFunction& f)
{
    if (w.group().index() != f.group.index())
        throw ContextMismatch("weight and function live on different groups");
    if (const auto* ctx = std::get_if<PAdicContext>(&f.group)) {
        if (!(*ctx == std::get<PAdicContext>(w.group())))
            throw ContextMismatch("weight and function use different p-adic contexts");
        if (w.as_table()->level > f.level)
            throw GridMismatch("weight varies below the grid level");
    }
}

// weight samples at the grid points, exact when possible
std::pair<std::vector<double>, std::optional<std::vector<Rational>>> weight_samples(
    const DiscretizedFunction& f, const std::function<WeightProduct(const Element&)>& w)
{
    std::vector<double> d(f.size());
    std::vector<Rational> e;
    bool exact = f.exact.has_value();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const WeightProduct v = w(f.point(i));
        d[i] = v.value;
        if (exact && v.exact)
            e.push_back(*v.exact);
        else
            exact = false;
    }
    if (!exact)
        return {d, std::nullopt};
    return {d, e};
}

DiscretizedFunction apply_sampled(const DiscretizedFunction& f, const std::vector<std::size_t>& idx,
                                  const std::pair<std::vector<double>, std::optional<std::vector<Rational>>>& w)
{
    DiscretizedFunction g = f;
    for (std::size_t i = 0; i < f.size(); ++i)
        g.values[i] = w.first[i] * f.values[idx[i]];
    if (w.second) {
        for (std::size_t i = 0; i < f.size(); ++i)
            (*g.exact)[i] = (*w.second)[i] * (*f.exact)[idx[i]];
    } else {
        g.exact.reset();
    }
    return g;
}

} // namespace

DiscretizedFunction apply_operator(const Weight& w, const Element& a, const DiscretizedFunction& f, GridMode mode)
{
    check_grid(w, f);
    const auto idx = translation_indices(f.group, f.size(), f.level, a, mode);
    const auto samples = weight_samples(f, [&](const Element& x) {
        WeightProduct p;
        p.exact = w.eval_exact(x);
        p.value = p.exact ? to_double(*p.exact) : w.eval(x);
        return p;
    });
    return apply_sampled(f, idx, samples);
}

double sup_distance(const DiscretizedFunction& a, const DiscretizedFunction& b)
{
    if (a.size() != b.size())
        throw GridMismatch("functions on grids of different size");
    double d = 0.0;
    if (a.exact && b.exact) {
        Rational m = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, Rational(abs((*a.exact)[i] - (*b.exact)[i])));
        return to_double(m);
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

PowerIdentityCheck operator_power_identity_check(const Weight& w, const Element& a, long long n,
                                                 const DiscretizedFunction& f)
{
    if (n < 1)
        throw std::invalid_argument("operator power needs n >= 1");
    check_grid(w, f);
    DiscretizedFunction iterated = f;
    for (long long j = 0; j < n; ++j)
        iterated = apply_operator(w, a, iterated);

    const Element an = pow(f.group, a, n);
    const auto idx = translation_indices(f.group, f.size(), f.level, an, GridMode::Strict);
    const auto samples = weight_samples(f, [&](const Element& x) { return weight_product(w, a, n, x); });
    const DiscretizedFunction direct = apply_sampled(f, idx, samples);

    PowerIdentityCheck out;
    out.exact = iterated.exact.has_value() && direct.exact.has_value();
    out.deviation = sup_distance(iterated, direct);
    out.exact_zero = out.exact && *iterated.exact == *direct.exact;
    return out;
}

} // namespace hclab
