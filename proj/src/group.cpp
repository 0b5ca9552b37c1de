#include "hclab/group.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/errors.hpp"

namespace hclab {

using detail::overloaded;

void check_member(const GroupContext& g, const Element& x)
{
    std::visit(overloaded{
                   [&](const FiniteGroup& fg) {
                       auto* e = std::get_if<FiniteElement>(&x);
                       if (!e || !fg.contains(*e))
                           throw ContextMismatch("element is not in finite group " + fg.name());
                   },
                   [&](const CircleGroup&) {
                       if (!std::holds_alternative<CircleElement>(x))
                           throw ContextMismatch("element is not a circle element");
                   },
                   [&](const PAdicContext& ctx) {
                       auto* e = std::get_if<PAdicNumber>(&x);
                       if (!e || !(e->context() == ctx))
                           throw ContextMismatch("element is not in this p-adic context");
                   },
               },
               g);
}

Element identity(const GroupContext& g)
{
    return std::visit(overloaded{
                          [](const FiniteGroup& fg) -> Element { return fg.identity(); },
                          [](const CircleGroup&) -> Element { return circle::identity(); },
                          [](const PAdicContext& ctx) -> Element { return PAdicNumber(ctx); },
                      },
                      g);
}

Element mul(const GroupContext& g, const Element& x, const Element& y)
{
    check_member(g, x);
    check_member(g, y);
    return std::visit(overloaded{
                          [&](const FiniteGroup& fg) -> Element {
                              return fg.mul(std::get<FiniteElement>(x), std::get<FiniteElement>(y));
                          },
                          [&](const CircleGroup&) -> Element {
                              return circle::mul(std::get<CircleElement>(x), std::get<CircleElement>(y));
                          },
                          [&](const PAdicContext&) -> Element {
                              return std::get<PAdicNumber>(x) + std::get<PAdicNumber>(y);
                          },
                      },
                      g);
}

Element inverse(const GroupContext& g, const Element& x)
{
    check_member(g, x);
    return std::visit(overloaded{
                          [&](const FiniteGroup& fg) -> Element { return fg.inverse(std::get<FiniteElement>(x)); },
                          [&](const CircleGroup&) -> Element { return circle::inverse(std::get<CircleElement>(x)); },
                          [&](const PAdicContext&) -> Element { return -std::get<PAdicNumber>(x); },
                      },
                      g);
}

Element pow(const GroupContext& g, const Element& a, long long n)
{
    check_member(g, a);
    return std::visit(overloaded{
                          [&](const FiniteGroup& fg) -> Element { return fg.pow(std::get<FiniteElement>(a), n); },
                          [&](const CircleGroup&) -> Element { return circle::pow(std::get<CircleElement>(a), n); },
                          [&](const PAdicContext&) -> Element { return std::get<PAdicNumber>(a).scaled(n); },
                      },
                      g);
}

bool is_torsion(const GroupContext& g, const Element& a)
{
    check_member(g, a);
    return std::visit(overloaded{
                          [](const FiniteGroup&) { return true; },
                          [&](const CircleGroup&) { return circle::is_torsion(std::get<CircleElement>(a)); },
                          [&](const PAdicContext&) { return std::get<PAdicNumber>(a).is_zero(); },
                      },
                      g);
}

} // namespace hclab
