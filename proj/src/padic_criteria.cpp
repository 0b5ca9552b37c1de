#include "hclab/padic_criteria.hpp"

#include "hclab/errors.hpp"
#include "hclab/translation_operator.hpp"

#include <algorithm>

namespace hclab {

namespace {

const PAdicContext& context_of(const Weight& w)
{
    const auto* ctx = std::get_if<PAdicContext>(&w.group());
    if (!ctx || !w.as_table())
        throw ContextMismatch("expected a coset-table weight on a p-adic group");
    return *ctx;
}

void check_element(const PAdicContext& ctx, const PAdicNumber& x)
{
    if (!(x.context() == ctx))
        throw ContextMismatch("p-adic element from a different context");
}

// stored level of the closed subgroup generated by x: v_p(x) + m, or nullopt at the cap
std::optional<unsigned> stored_valuation(const PAdicNumber& x)
{
    const auto v = x.valuation();
    if (!v)
        return std::nullopt;
    return static_cast<unsigned>(*v + static_cast<int>(x.context().window));
}

} // namespace

std::vector<Rational> weight_product_table(const Weight& w, const PAdicNumber& a, long long n)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, a);
    if (n < 1)
        throw std::invalid_argument("w_n needs n >= 1");
    const CosetTable& t = *w.as_table();
    const std::uint64_t mod = ctx.power(t.level);
    const std::uint64_t step = a.residue_at(t.level);
    std::vector<Rational> out(t.values.size(), Rational(1));
    for (std::uint64_t r = 0; r < mod; ++r) {
        std::uint64_t y = r;
        for (long long j = 0; j < n; ++j) {
            out[r] *= t.values[y];
            y = (y + mod - step) % mod;
        }
    }
    return out;
}

ULWitness ul_sets(const Weight& w, const PAdicNumber& a, long long n, const PAdicNumber& center)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, a);
    check_element(ctx, center);
    if (n < 1)
        throw std::invalid_argument("ul_sets: n must be a positive step count");
    const PAdicNumber na = a.scaled(n);
    ULWitness out{.n = n, .center = center};
    out.valuation = na.valuation();
    out.radius = na.norm();
    out.ball_level = out.valuation ? static_cast<unsigned>(*out.valuation + static_cast<int>(ctx.window)) : ctx.digits();

    const CosetTable& t = *w.as_table();
    const std::vector<Rational> wn = weight_product_table(w, a, n);
    const unsigned fixed = std::min(out.ball_level, t.level);
    const std::uint64_t fixed_mod = ctx.power(fixed);
    const std::uint64_t base = center.residue_at(fixed);
    const std::uint64_t free = ctx.power(t.level - fixed);
    for (std::uint64_t s = 0; s < free; ++s) {
        const std::uint64_t r = base + s * fixed_mod;
        if (wn[r] > 1)
            out.upper.push_back(r);
        else if (wn[r] < 1)
            out.lower.push_back(r);
    }
    out.cosets = free;
    return out;
}

std::optional<int> is_locally_constant(const Weight& w)
{
    const PAdicContext& ctx = context_of(w);
    const CosetTable& t = *w.as_table();
    unsigned k = 0;
    for (; k < t.level; ++k) {
        const std::uint64_t mod = ctx.power(k);
        bool constant = true;
        for (std::uint64_t r = 0; r < t.values.size() && constant; ++r)
            constant = t.values[r] == t.values[r % mod];
        if (constant)
            break;
    }
    if (k == t.level && k > 0 && !t.declared_locally_constant)
        return std::nullopt;
    return static_cast<int>(k) - static_cast<int>(ctx.window);
}

std::optional<ObstructionFragment> locally_constant_obstruction(const Weight& w, const PAdicNumber& a)
{
    const PAdicContext& ctx = context_of(w);
    if (!ctx.is_zp())
        throw WindowExceeded("the locally constant obstruction runs on Z_p; reduce windowed problems first");
    const auto k = is_locally_constant(w);
    if (!k || a.is_zero())
        return std::nullopt;
    long long n = 1;
    for (int i = 0; i < *k; ++i)
        n *= ctx.p;
    const PAdicNumber origin(ctx);
    ULWitness ul = ul_sets(w, a, n, origin);
    if (ul.upper_nonempty() && ul.lower_nonempty())
        throw InternalInconsistency("w_{p^k} of a k-u.l.c. weight takes values on both sides of 1 on B(0, |p^k a|)");
    const CosetTable& t = *w.as_table();
    const std::vector<Rational> wn = weight_product_table(w, a, n);
    const unsigned fixed = std::min(ul.ball_level, t.level);
    const std::uint64_t fixed_mod = ctx.power(fixed);
    const std::uint64_t free = ctx.power(t.level - fixed);
    for (std::uint64_t s = 1; s < free; ++s)
        if (wn[s * fixed_mod] != wn[0])
            throw InternalInconsistency("w_{p^k} is not constant on B(0, |p^k a|)");
    return ObstructionFragment{*k, n, wn[0], std::move(ul)};
}

CosetLogIntegrals coset_log_integrals(const Weight& w, const PAdicNumber& a)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, a);
    const auto ks = stored_valuation(a);
    if (!ks)
        throw WindowExceeded("coset log-integrals need a nonzero translation element");
    const CosetTable& t = *w.as_table();
    if (ctx.power(*ks) > (1u << 20))
        throw WindowExceeded("too many cosets to enumerate");

    CosetLogIntegrals out;
    const std::uint64_t count = ctx.power(*ks);
    const unsigned fixed = std::min(*ks, t.level);
    const std::uint64_t fixed_mod = ctx.power(fixed);
    const std::uint64_t free = ctx.power(t.level - fixed);
    for (std::uint64_t b = 0; b < count; ++b) {
        Rational prod = 1;
        const std::uint64_t base = b % fixed_mod;
        for (std::uint64_t s = 0; s < free; ++s)
            prod *= t.values[base + s * fixed_mod];
        CosetLogIntegral c{PAdicNumber::from_residue(ctx, b), static_cast<int>(*ks) - static_cast<int>(ctx.window),
                           LogMass{prod, BigInt(free)}, LogMass{}};
        // each coset carries p^{-ks}, split evenly over its table cells
        c.mass = LogMass{prod, BigInt(free) * BigInt(count)};
        out.total += c.mass;
        out.cosets.push_back(std::move(c));
    }
    const LogIntegral global = log_integral(w);
    const LogMass& g = *global.exact;
    out.total_matches = pow(out.total.product, static_cast<std::uint64_t>(g.denominator)) ==
                        pow(g.product, static_cast<std::uint64_t>(out.total.denominator));
    return out;
}

Weight conjugate_translate(const Weight& w, const PAdicNumber& shift)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, shift);
    CosetTable t = *w.as_table();
    const std::uint64_t mod = ctx.power(t.level);
    const std::uint64_t s = shift.residue_at(t.level);
    for (std::uint64_t r = 0; r < mod; ++r)
        t.values[r] = w.as_table()->values[(r + s) % mod];
    return Weight::coset_table(ctx, std::move(t));
}

ConjugationTriple conjugate_scale(const Weight& w, const PAdicNumber& a, long long n, const PAdicNumber& translate)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, a);
    check_element(ctx, translate);
    if (!ctx.is_zp())
        throw WindowExceeded("conjugate_scale runs on Z_p contexts");
    if (n < 1)
        throw std::invalid_argument("conjugate_scale: n must be a positive step count");
    const PAdicNumber na = a.scaled(n);
    const auto v = na.valuation();
    if (!v)
        throw WindowExceeded("na vanishes at the stored precision");
    const auto vs = static_cast<unsigned>(*v);

    const CosetTable& t = *w.as_table();
    const std::vector<Rational> wn = weight_product_table(w, a, n);
    const unsigned level = t.level > vs ? t.level - vs : 0;
    const std::uint64_t mod = ctx.power(t.level);
    std::vector<Rational> reduced(ctx.power(level));
    for (std::uint64_t s = 0; s < reduced.size(); ++s) {
        const auto x = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(ctx.power(std::min(vs, t.level))) * s + translate.residue_at(t.level)) % mod);
        reduced[s] = wn[x];
    }
    return ConjugationTriple{a,
                             w,
                             translate,
                             n,
                             *v,
                             na.divided_by_p_power(vs),
                             Weight::coset_table(ctx, CosetTable{level, std::move(reduced), t.declared_locally_constant})};
}

namespace {

// f -> (x -> f(c x)) on grids of the given levels, c multiplied in stored coordinates
DiscretizedFunction compose_with_multiplication(const DiscretizedFunction& f, std::uint64_t c, unsigned out_level)
{
    const auto& ctx = std::get<PAdicContext>(f.group);
    const std::uint64_t in_mod = ctx.power(f.level);
    std::vector<Rational> v(ctx.power(out_level));
    for (std::uint64_t x = 0; x < v.size(); ++x)
        v[x] = (*f.exact)[mul_mod(c % in_mod, x % in_mod, in_mod)];
    return DiscretizedFunction::padic(ctx, out_level, std::move(v));
}

DiscretizedFunction translate_by(const DiscretizedFunction& f, const PAdicNumber& t)
{
    const auto& ctx = std::get<PAdicContext>(f.group);
    return apply_operator(Weight::constant(ctx, Rational(1)), t, f);
}

} // namespace

DiagramCheck check_translate_diagram(const Weight& w, const PAdicNumber& a, const PAdicNumber& translate)
{
    const PAdicContext& ctx = context_of(w);
    const Weight shifted = conjugate_translate(w, translate);
    const unsigned level = ctx.digits();
    DiagramCheck out{"translate", ctx.power(level), 0};
    for (std::size_t i = 0; i < out.basis_size; ++i) {
        const auto f = DiscretizedFunction::delta(ctx, out.basis_size, i, level);
        const auto lhs = translate_by(apply_operator(w, a, f), -translate);
        const auto rhs = apply_operator(shifted, a, translate_by(f, -translate));
        if (*lhs.exact != *rhs.exact)
            ++out.failures;
    }
    return out;
}

DiagramCheck check_scale_diagram(const ConjugationTriple& t)
{
    const PAdicContext& ctx = context_of(t.w);
    const Weight shifted = conjugate_translate(t.w, t.translate);
    const unsigned level = ctx.digits();
    const auto v = static_cast<unsigned>(t.scale);
    const unsigned low = level - v;
    const std::uint64_t scale = ctx.power(v);
    DiagramCheck out{"scale", ctx.power(level), 0};
    for (std::size_t i = 0; i < out.basis_size; ++i) {
        const auto f = DiscretizedFunction::delta(ctx, out.basis_size, i, level);
        DiscretizedFunction top = f;
        for (long long j = 0; j < t.n; ++j)
            top = apply_operator(shifted, t.a, top);
        const auto lhs = compose_with_multiplication(top, scale, low);
        const auto rhs = apply_operator(t.reduced_w, t.reduced_a, compose_with_multiplication(f, scale, low));
        if (*lhs.exact != *rhs.exact)
            ++out.failures;
    }
    return out;
}

DiagramCheck check_multiplication_diagram(const Weight& w, const PAdicNumber& a)
{
    const PAdicContext& ctx = context_of(w);
    if (!ctx.is_zp())
        throw WindowExceeded("multiplication by a is checked on Z_p contexts");
    const CosetTable& t = *w.as_table();
    const unsigned level = ctx.digits();
    const std::uint64_t mod = ctx.power(t.level);
    std::vector<Rational> scaled(mod);
    for (std::uint64_t x = 0; x < mod; ++x)
        scaled[x] = t.values[mul_mod(a.residue_at(t.level), x, mod)];
    const Weight maw = Weight::coset_table(ctx, CosetTable{t.level, std::move(scaled), t.declared_locally_constant});
    const PAdicNumber one = PAdicNumber::from_integer(ctx, 1);
    DiagramCheck out{"multiplication", ctx.power(level), 0};
    for (std::size_t i = 0; i < out.basis_size; ++i) {
        const auto f = DiscretizedFunction::delta(ctx, out.basis_size, i, level);
        const auto lhs = compose_with_multiplication(apply_operator(w, a, f), a.residue(), level);
        const auto rhs = apply_operator(maw, one, compose_with_multiplication(f, a.residue(), level));
        if (*lhs.exact != *rhs.exact)
            ++out.failures;
    }
    return out;
}

DiagramCheck check_restriction_diagram(const Weight& w, const PAdicNumber& a, const PAdicNumber& b)
{
    const PAdicContext& ctx = context_of(w);
    const auto ks = stored_valuation(a);
    if (!ks)
        throw WindowExceeded("restriction needs a nonzero translation element");
    const Weight shifted = conjugate_translate(w, b);
    const unsigned level = ctx.digits();
    const std::uint64_t step = ctx.power(*ks);
    const std::uint64_t sub = ctx.power(level - *ks);
    DiagramCheck out{"restriction", ctx.power(level), 0};
    for (std::size_t i = 0; i < out.basis_size; ++i) {
        const auto f = DiscretizedFunction::delta(ctx, out.basis_size, i, level);
        const auto full = apply_operator(shifted, a, translate_by(f, -b));
        const auto g = translate_by(f, -b);
        // the restricted operator acts on the points p^ks s of the subgroup only
        bool same = true;
        for (std::uint64_t s = 0; s < sub && same; ++s) {
            const std::uint64_t x = s * step;
            const std::uint64_t y = (x + ctx.modulus() - a.residue()) % ctx.modulus();
            const Rational restricted = *shifted.eval_exact(PAdicNumber::from_residue(ctx, x)) * (*g.exact)[y];
            same = restricted == (*full.exact)[x];
        }
        if (!same)
            ++out.failures;
    }
    return out;
}

std::vector<CosetProblem> qp_reduction(const Weight& w, const PAdicNumber& a)
{
    const PAdicContext& ctx = context_of(w);
    check_element(ctx, a);
    const auto ks = stored_valuation(a);
    if (!ks)
        throw WindowExceeded("qp_reduction needs a nonzero translation element");
    const int k = static_cast<int>(*ks) - static_cast<int>(ctx.window);
    if (k >= static_cast<int>(ctx.precision))
        throw WindowExceeded("v_p(a) leaves no digits for the restricted problems");
    const PAdicContext sub{ctx.p, static_cast<unsigned>(static_cast<int>(ctx.precision) - k), 0};
    const CosetTable& t = *w.as_table();
    const unsigned level = t.level > *ks ? t.level - *ks : 0;
    const std::uint64_t count = ctx.power(*ks);
    if (count > (1u << 16))
        throw WindowExceeded("too many cosets in the reduction");
    const PAdicNumber unit = PAdicNumber::from_residue(sub, (a.residue() / count) % sub.modulus());
    const std::uint64_t mod = ctx.power(t.level);

    std::vector<CosetProblem> out;
    for (std::uint64_t b = 0; b < count; ++b) {
        std::vector<Rational> values(sub.power(level));
        for (std::uint64_t s = 0; s < values.size(); ++s) {
            const auto x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(count) * s + b) % mod);
            values[s] = t.values[x];
        }
        out.push_back({PAdicNumber::from_residue(ctx, b), k, sub, unit,
                       Weight::coset_table(sub, CosetTable{level, std::move(values), t.declared_locally_constant})});
    }
    return out;
}

} // namespace hclab
