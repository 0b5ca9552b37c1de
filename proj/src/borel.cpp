#include "hclab/borel.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/errors.hpp"

namespace hclab {

BorelSet empty_set(const GroupContext& g)
{
    return std::visit(detail::overloaded{
                          [](const FiniteGroup& f) -> BorelSet { return FiniteSubset(f.order()); },
                          [](const CircleGroup&) -> BorelSet { return IntervalSet(); },
                          [](const PAdicContext& c) -> BorelSet { return BallSet(c); },
                      },
                      g);
}

BorelSet whole_set(const GroupContext& g)
{
    return std::visit(detail::overloaded{
                          [](const FiniteGroup& f) -> BorelSet { return FiniteSubset::whole(f.order()); },
                          [](const CircleGroup&) -> BorelSet { return IntervalSet::full(); },
                          [](const PAdicContext& c) -> BorelSet { return BallSet::whole(c); },
                      },
                      g);
}

namespace {

template <class Op>
BorelSet binary(const BorelSet& a, const BorelSet& b, Op op)
{
    if (a.index() != b.index())
        throw ContextMismatch("sets from different group families");
    return std::visit(
        [&](const auto& x) -> BorelSet {
            using T = std::decay_t<decltype(x)>;
            return op(x, std::get<T>(b));
        },
        a);
}

} // namespace

BorelSet set_union(const BorelSet& a, const BorelSet& b)
{
    return binary(a, b, [](const auto& x, const auto& y) -> BorelSet { return x.unite(y); });
}

BorelSet set_intersection(const BorelSet& a, const BorelSet& b)
{
    return binary(a, b, [](const auto& x, const auto& y) -> BorelSet { return x.intersect(y); });
}

BorelSet set_complement(const BorelSet& a)
{
    return std::visit([](const auto& x) -> BorelSet { return x.complement(); }, a);
}

Rational measure(const BorelSet& a)
{
    return std::visit([](const auto& x) { return x.measure(); }, a);
}

FormTag classify_form(const BorelSet& a)
{
    return std::visit([](const auto& x) { return x.form(); }, a);
}

bool contains(const BorelSet& a, const Element& x)
{
    return std::visit(detail::overloaded{
                          [&](const IntervalSet& s) { return s.contains(std::get<CircleElement>(x)); },
                          [&](const BallSet& s) { return s.contains(std::get<PAdicNumber>(x)); },
                          [&](const FiniteSubset& s) { return s.contains(std::get<FiniteElement>(x)); },
                      },
                      a);
}

void check_set(const GroupContext& g, const BorelSet& a)
{
    const bool ok = std::visit(detail::overloaded{
                                   [&](const FiniteGroup& f) {
                                       auto* s = std::get_if<FiniteSubset>(&a);
                                       return s && s->group_order() == f.order();
                                   },
                                   [&](const CircleGroup&) { return std::holds_alternative<IntervalSet>(a); },
                                   [&](const PAdicContext& c) {
                                       auto* s = std::get_if<BallSet>(&a);
                                       return s && s->context() == c;
                                   },
                               },
                               g);
    if (!ok)
        throw ContextMismatch("set does not belong to the group context");
}

BorelSet translate_inverse(const GroupContext& g, const BorelSet& k, const Element& x)
{
    check_set(g, k);
    check_member(g, x);
    return std::visit(
        detail::overloaded{
            [&](const FiniteGroup& f) -> BorelSet {
                const auto& s = std::get<FiniteSubset>(k);
                FiniteSubset out(f.order());
                const FiniteElement xi = f.inverse(std::get<FiniteElement>(x));
                for (FiniteElement y : s.members())
                    out.insert(f.mul(xi, y));
                return out;
            },
            [&](const CircleGroup&) -> BorelSet {
                const auto& c = std::get<CircleElement>(x);
                if (!c.is_exact())
                    throw ContextMismatch("translating an exact set needs an exact-rational element");
                return std::get<IntervalSet>(k).translated(-*c.exact());
            },
            [&](const PAdicContext& c) -> BorelSet {
                const auto& s = std::get<BallSet>(k);
                const auto& t = std::get<PAdicNumber>(x);
                std::vector<Ball> balls;
                for (const Ball& b : s.balls()) {
                    const std::uint64_t mod = c.power(b.level);
                    balls.push_back({(b.center + mod - t.residue_at(b.level)) % mod, b.level});
                }
                return BallSet::from_balls(c, std::move(balls));
            },
        },
        g);
}

} // namespace hclab
