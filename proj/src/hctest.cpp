#include "hclab/hctest.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/equidist.hpp"
#include "hclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hclab {

std::string to_string(VerdictKind v)
{
    return v == VerdictKind::NotHypercyclic ? "NotHypercyclic" : "NecessaryConditionsPassed";
}

std::string to_string(RuleKind r)
{
    switch (r) {
    case RuleKind::None: return "none";
    case RuleKind::Torsion: return "Torsion";
    case RuleKind::MonotoneWeightPower: return "MonotoneWeightPower";
    case RuleKind::LogIntegralNonzero: return "LogIntegralNonzero";
    case RuleKind::ULEmpty: return "ULEmpty";
    case RuleKind::LocallyConstant: return "LocallyConstant";
    }
    return "none";
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ScanRow exact_row(long long n, const Rational& lo, const Rational& hi)
{
    return {n, to_double(lo), to_double(hi), lo, hi};
}

// tables: w_n on every residue / element, built incrementally
MonotoneScan scan_table(const std::vector<Rational>& w, const std::function<std::size_t(std::size_t, long long)>& shift,
                        long long n_max)
{
    MonotoneScan out;
    out.evidence = "exact";
    std::vector<Rational> prod(w.size(), Rational(1));
    for (long long n = 1; n <= n_max; ++n) {
        for (std::size_t r = 0; r < w.size(); ++r)
            prod[r] *= w[shift(r, n - 1)];
        const auto [lo, hi] = std::minmax_element(prod.begin(), prod.end());
        out.trace.push_back(exact_row(n, *lo, *hi));
        out.above = *lo >= 1;
        out.below = *hi <= 1;
        if (out.above || out.below) {
            out.n = n;
            return out;
        }
    }
    return out;
}

// step weights: w_n is constant between the points e + j a
MonotoneScan scan_step(const StepFunction& s, const CircleElement& a, long long n_max)
{
    MonotoneScan out;
    std::vector<Rational> boundary;
    for (const StepPiece& p : s.pieces())
        for (const Rational& b : p.set.boundary())
            boundary.push_back(b);
    if (boundary.empty())
        boundary.push_back(Rational(0));

    const bool exact = a.is_exact() && s.is_exact();
    out.evidence = exact ? "exact" : "breakpoints";
    for (long long n = 1; n <= n_max; ++n) {
        bool first = true;
        ScanRow row{n, inf, -inf, std::nullopt, std::nullopt};
        if (exact) {
            std::vector<Rational> pts;
            for (long long j = 0; j < n; ++j)
                for (const Rational& b : boundary)
                    pts.push_back(frac(b + *a.exact() * j));
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            const std::size_t count = pts.size();
            for (std::size_t i = 0; i < count; ++i) {
                const Rational next = i + 1 < count ? pts[i + 1] : pts[0] + 1;
                pts.push_back(frac((pts[i] + next) / 2));
            }
            for (const Rational& x : pts) {
                Rational prod = 1;
                for (long long j = 0; j < n; ++j)
                    prod *= *s.pieces()[s.piece_at(frac(x - *a.exact() * j))].exact;
                if (first || prod < *row.exact_min)
                    row.exact_min = prod;
                if (first || prod > *row.exact_max)
                    row.exact_max = prod;
                first = false;
            }
            row.min = to_double(*row.exact_min);
            row.max = to_double(*row.exact_max);
            out.above = *row.exact_min >= 1;
            out.below = *row.exact_max <= 1;
        } else {
            std::vector<double> pts;
            for (long long j = 0; j < n; ++j)
                for (const Rational& b : boundary)
                    pts.push_back(fold_unit(to_double(b) + orbit_angle(a, j, +1)));
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            const std::size_t count = pts.size();
            for (std::size_t i = 0; i < count; ++i) {
                const double next = i + 1 < count ? pts[i + 1] : pts[0] + 1.0;
                pts.push_back(fold_unit((pts[i] + next) / 2));
            }
            for (double x : pts) {
                double prod = 1.0;
                for (long long j = 0; j < n; ++j)
                    prod *= s.eval(fold_unit(x + orbit_angle(a, j)));
                row.min = std::min(row.min, prod);
                row.max = std::max(row.max, prod);
            }
            out.above = row.min >= 1.0;
            out.below = row.max <= 1.0;
        }
        out.trace.push_back(row);
        if (out.above || out.below) {
            out.n = n;
            return out;
        }
    }
    return out;
}

Interval enclose_circle(const Expression& e, double lo, double hi)
{
    lo = std::nextafter(lo, -inf);
    hi = std::nextafter(hi, inf);
    if (lo >= 0.0 && hi <= 1.0)
        return e.enclose({lo, hi});
    // split at the seam and take the hull
    const double a = lo < 0.0 ? lo + 1.0 : lo;
    const double b = hi > 1.0 ? hi - 1.0 : hi;
    const Interval left = e.enclose({a, 1.0});
    const Interval right = e.enclose({0.0, b});
    return {std::min(left.lo, right.lo), std::max(left.hi, right.hi)};
}

// interval product of w(x - j a), j < n, over the cell [lo, lo + h]
Interval enclose_product(const Expression& e, const CircleElement& a, long long n, double lo, double h)
{
    Interval p{1.0, 1.0};
    for (long long j = 0; j < n; ++j) {
        const double s = fold_unit(lo + orbit_angle(a, j));
        const Interval f = enclose_circle(e, s, s + h);
        if (!(f.lo > 0.0))
            return {0.0, inf};
        p = {std::nextafter(p.lo * f.lo, 0.0), std::nextafter(p.hi * f.hi, inf)};
    }
    return p;
}

bool certify(const Expression& e, const CircleElement& a, long long n, double lo, double h, bool above, int depth)
{
    const Interval p = enclose_product(e, a, n, lo, h);
    if (above ? p.lo >= 1.0 : p.hi <= 1.0)
        return true;
    if (depth == 0)
        return false;
    return certify(e, a, n, lo, h / 2, above, depth - 1) && certify(e, a, n, lo + h / 2, h / 2, above, depth - 1);
}

MonotoneScan scan_expression(const Expression& e, const CircleElement& a, long long n_max, std::size_t grid)
{
    MonotoneScan out;
    std::vector<double> prod(grid, 1.0);
    for (long long n = 1; n <= n_max; ++n) {
        ScanRow row{n, inf, -inf, std::nullopt, std::nullopt};
        const double shift = orbit_angle(a, n - 1);
        for (std::size_t i = 0; i < grid; ++i) {
            prod[i] *= e.eval(fold_unit(static_cast<double>(i) / static_cast<double>(grid) + shift));
            row.min = std::min(row.min, prod[i]);
            row.max = std::max(row.max, prod[i]);
        }
        out.trace.push_back(row);
        out.above = row.min >= 1.0;
        out.below = row.max <= 1.0;
        if (out.above || out.below) {
            out.n = n;
            const double h = 1.0 / static_cast<double>(grid);
            bool certified = true;
            for (std::size_t i = 0; i < grid && certified; ++i)
                certified = certify(e, a, n, static_cast<double>(i) * h, h, out.above, 6);
            out.evidence = certified ? "certified" : "grid";
            return out;
        }
    }
    out.evidence = "grid";
    return out;
}

} // namespace

MonotoneScan monotone_power_scan(const Weight& w, const Element& a, long long n_max, std::size_t grid)
{
    if (n_max < 1)
        throw std::invalid_argument("monotone scan needs n_max >= 1");
    check_member(w.group(), a);
    return std::visit(
        detail::overloaded{
            [&](const FiniteGroup& g) {
                const FiniteElement ai = g.inverse(std::get<FiniteElement>(a));
                return scan_table(*w.as_finite_table(),
                                  [&](std::size_t x, long long j) { return g.mul(x, g.pow(ai, j)); }, n_max);
            },
            [&](const CircleGroup&) {
                const auto& ca = std::get<CircleElement>(a);
                if (const auto* s = w.as_step())
                    return scan_step(*s, ca, n_max);
                const Expression& e = *w.as_expression();
                if (auto c = e.exact_constant())
                    return scan_step(StepFunction::constant(*c), ca, n_max);
                if (grid < 1)
                    throw std::invalid_argument("scan grid must be nonempty");
                return scan_expression(e, ca, n_max, grid);
            },
            [&](const PAdicContext& ctx) {
                const CosetTable& t = *w.as_table();
                const std::uint64_t mod = ctx.power(t.level);
                const std::uint64_t step = std::get<PAdicNumber>(a).residue_at(t.level);
                return scan_table(
                    t.values,
                    [&](std::size_t r, long long j) {
                        const auto back = static_cast<std::uint64_t>(static_cast<unsigned __int128>(step) *
                                                                     static_cast<std::uint64_t>(j) % mod);
                        return static_cast<std::size_t>((r + mod - back) % mod);
                    },
                    n_max);
            },
        },
        w.group());
}

namespace {

void fire(VerdictReport& r, RuleKind rule)
{
    r.verdict = VerdictKind::NotHypercyclic;
    r.rule = rule;
}

std::string coset_label(const PAdicNumber& b, int radius_exp)
{
    return b.to_string() + " + " + std::to_string(b.context().p) + "^" + std::to_string(radius_exp) + " Z_" +
           std::to_string(b.context().p);
}

// locally constant obstruction and U/L scan on Z_p
void padic_tests(VerdictReport& r, const Weight& w, const PAdicNumber& a, const VerdictConfig& cfg)
{
    const PAdicContext& ctx = a.context();
    r.tests_run.push_back("locally_constant");
    if (auto frag = locally_constant_obstruction(w, a)) {
        fire(r, RuleKind::LocallyConstant);
        r.k = frag->k;
        r.n = frag->n;
        r.exact_value = to_string(frag->value);
        r.value = to_double(frag->value);
        r.witness = "w_" + std::to_string(frag->n) + " = " + to_string(frag->value) + " on B(0, " +
                    to_string(frag->witness.radius) + ")";
        r.evidence = "exact";
        r.ul_trace.push_back(std::move(frag->witness));
        return;
    }
    r.tests_run.push_back("ul_scan");
    const CosetTable& t = *w.as_table();
    for (long long n = 1; n <= cfg.ul_n_max; ++n) {
        const PAdicNumber na = a.scaled(n);
        const unsigned ball =
            na.valuation() ? static_cast<unsigned>(*na.valuation() + static_cast<int>(ctx.window)) : ctx.digits();
        const std::uint64_t centers = ctx.power(std::min(ball, t.level));
        for (std::uint64_t c = 0; c < centers; ++c) {
            ULWitness u = ul_sets(w, a, n, PAdicNumber::from_residue(ctx, c));
            const bool empty = !u.upper_nonempty() || !u.lower_nonempty();
            r.ul_trace.push_back(u);
            if (empty) {
                fire(r, RuleKind::ULEmpty);
                r.n = n;
                r.witness = std::string(u.upper_nonempty() ? "L" : "U") + " empty on B(" + u.center.to_string() +
                            ", " + to_string(u.radius) + ")";
                r.evidence = "exact";
                return;
            }
        }
    }
}

} // namespace

VerdictReport verdict(const Weight& w, const Element& a, const VerdictConfig& cfg)
{
    const GroupContext& g = w.group();
    check_member(g, a);
    VerdictReport r;
    r.config = cfg;

    r.tests_run.push_back("torsion");
    if (is_torsion(g, a)) {
        fire(r, RuleKind::Torsion);
        r.evidence = "exact";
        r.witness = std::visit(detail::overloaded{
                                   [](const FiniteElement& x) { return "element " + std::to_string(x) + " of a finite group"; },
                                   [](const CircleElement& x) { return "a = " + to_string(*x.exact()); },
                                   [](const PAdicNumber&) { return std::string("a = 0"); },
                               },
                               a);
        return r;
    }

    long long n_max = cfg.monotone_n_max;
    const auto* pa = std::get_if<PAdicNumber>(&a);
    if (pa && pa->context().is_zp()) {
        if (auto k = is_locally_constant(w); k && *k >= 1) {
            long long cap = 1;
            for (int i = 0; i < *k; ++i)
                cap *= pa->context().p;
            n_max = std::min(n_max, cap - 1);
        }
    }
    r.tests_run.push_back("monotone_scan");
    MonotoneScan scan = monotone_power_scan(w, a, n_max, cfg.scan_grid);
    r.scan = scan;
    if (scan.n) {
        fire(r, RuleKind::MonotoneWeightPower);
        r.n = scan.n;
        const ScanRow& last = scan.trace.back();
        r.value = scan.above ? last.min : last.max;
        if (last.exact_min)
            r.exact_value = to_string(scan.above ? *last.exact_min : *last.exact_max);
        r.witness = "w_" + std::to_string(*scan.n) + (scan.above ? " >= 1" : " <= 1") + " everywhere";
        r.evidence = scan.evidence;
        return r;
    }

    r.tests_run.push_back("log_integral");
    const LogIntegral li = log_integral(w, cfg.quadrature_nodes);
    r.log_integral = li;
    if (li.exact) {
        if (!li.exact->is_zero()) {
            fire(r, RuleKind::LogIntegralNonzero);
            r.value = li.value;
            r.exact_value = "ln(" + to_string(li.exact->product) + ")/" + li.exact->denominator.str();
            r.witness = "integral of ln w";
            r.evidence = "exact";
            return r;
        }
    } else if (std::abs(li.value) > cfg.log_tolerance && li.consistency <= cfg.log_tolerance) {
        fire(r, RuleKind::LogIntegralNonzero);
        r.value = li.value;
        r.witness = "integral of ln w";
        r.evidence = "quadrature";
        return r;
    }

    if (!pa)
        return r;

    if (pa->context().is_zp()) {
        padic_tests(r, w, *pa, cfg);
        return r;
    }

    r.tests_run.push_back("qp_reduction");
    for (CosetProblem& p : qp_reduction(w, *pa)) {
        VerdictReport sub = verdict(p.w, p.a, cfg);
        const bool fired = sub.verdict == VerdictKind::NotHypercyclic;
        if (fired && r.verdict != VerdictKind::NotHypercyclic) {
            fire(r, sub.rule);
            r.n = sub.n;
            r.k = sub.k;
            r.value = sub.value;
            r.exact_value = sub.exact_value;
            r.evidence = sub.evidence;
            r.witness = "coset " + coset_label(p.representative, p.radius_exp) + ": " + sub.witness;
        }
        r.cosets.push_back({std::move(p), std::move(sub)});
    }
    return r;
}

} // namespace hclab
