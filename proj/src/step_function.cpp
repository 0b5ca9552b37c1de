#include "hclab/step_function.hpp"

#include "hclab/detail/event_sweep.hpp"
#include "hclab/equidist.hpp"
#include "hclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hclab {

StepFunction::StepFunction(std::vector<StepPiece> pieces) : pieces_(std::move(pieces))
{
    if (pieces_.empty())
        throw std::invalid_argument("step function needs at least one piece");
    IntervalSet cover;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!cover.intersect(pieces_[i].set).empty())
            throw std::invalid_argument("step function pieces overlap");
        cover = cover.unite(pieces_[i].set);
        if (pieces_[i].exact)
            pieces_[i].value = to_double(*pieces_[i].exact);
    }
    if (!(cover == IntervalSet::full()))
        throw std::invalid_argument("step function pieces do not cover the circle");
}

StepFunction StepFunction::constant(double c)
{
    return StepFunction({StepPiece{IntervalSet::full(), c, std::nullopt}});
}

StepFunction StepFunction::constant(const Rational& c)
{
    return StepFunction({StepPiece{IntervalSet::full(), to_double(c), c}});
}

bool StepFunction::is_exact() const noexcept
{
    return std::all_of(pieces_.begin(), pieces_.end(), [](const StepPiece& p) { return p.exact.has_value(); });
}

std::size_t StepFunction::piece_at(double x) const
{
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].set.contains(x))
            return i;
    throw InternalInconsistency("step function does not cover " + std::to_string(x));
}

std::size_t StepFunction::piece_at(const Rational& x) const
{
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].set.contains(x))
            return i;
    throw InternalInconsistency("step function does not cover " + to_string(x));
}

double StepFunction::integral() const
{
    double s = 0.0;
    for (const StepPiece& p : pieces_)
        s += p.value * to_double(p.set.measure());
    return s;
}

std::optional<Rational> StepFunction::exact_integral() const
{
    if (!is_exact())
        return std::nullopt;
    Rational s = 0;
    for (const StepPiece& p : pieces_)
        s += *p.exact * p.set.measure();
    return s;
}

StepFunction StepFunction::log() const
{
    std::vector<StepPiece> out;
    for (const StepPiece& p : pieces_) {
        if (!(p.value > 0.0))
            throw NonPositiveWeight("ln of a non-positive step value");
        std::optional<Rational> exact;
        if (p.exact && *p.exact == 1)
            exact = Rational(0);
        out.push_back({p.set, std::log(p.value), exact});
    }
    return StepFunction(std::move(out));
}

StepFunction StepFunction::exp() const
{
    std::vector<StepPiece> out;
    for (const StepPiece& p : pieces_) {
        std::optional<Rational> exact;
        if (p.exact && *p.exact == 0)
            exact = Rational(1);
        out.push_back({p.set, std::exp(p.value), exact});
    }
    return StepFunction(std::move(out));
}

namespace {

struct Cell {
    double lo;
    double hi;
    Interval range;
};

void refine(const Expression& w, double lo, double hi, double tol, int depth, bool negate, std::vector<Cell>& out)
{
    Interval r = w.enclose({lo, hi});
    if (std::isnan(r.lo) || std::isnan(r.hi))
        throw std::domain_error("expression \"" + w.text() + "\" is undefined on part of the circle");
    if (negate)
        r = {-r.hi, -r.lo};
    if (r.width() <= tol) {
        out.push_back({lo, hi, r});
        return;
    }
    if (depth >= 40)
        throw PlateauResolutionFailure("enclosure of \"" + w.text() + "\" does not narrow below the tolerance");
    const double mid = lo + (hi - lo) / 2;
    refine(w, lo, mid, tol, depth + 1, negate, out);
    refine(w, mid, hi, tol, depth + 1, negate, out);
}

} // namespace

StepFunction step_approx(const Expression& w, double eps, ApproxSide side)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("step_approx needs eps > 0");
    if (!w.depends_on_x()) {
        if (auto c = w.exact_constant())
            return StepFunction::constant(*c);
        return StepFunction::constant(w.eval(0.0));
    }
    const bool negate = side == ApproxSide::Below;
    const double tol = eps / 16;

    std::vector<Cell> cells;
    constexpr int initial = 256;
    for (int i = 0; i < initial; ++i)
        refine(w, static_cast<double>(i) / initial, static_cast<double>(i + 1) / initial, tol, 0, negate, cells);

    double min_lo = std::numeric_limits<double>::infinity();
    double max_hi = -std::numeric_limits<double>::infinity();
    double widest = 0.0;
    std::vector<double> samples;
    samples.reserve(2 * cells.size());
    for (const Cell& c : cells) {
        min_lo = std::min(min_lo, c.range.lo);
        max_hi = std::max(max_hi, c.range.hi);
        widest = std::max(widest, c.range.width());
        for (double x : {c.lo, c.lo + (c.hi - c.lo) / 2}) {
            const double v = w.eval(x);
            samples.push_back(negate ? -v : v);
        }
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    std::vector<double> candidates;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        candidates.push_back(samples[i] + (samples[i + 1] - samples[i]) / 2);

    const double gap = eps - widest;
    // largest candidate in (floor, target]
    auto pick = [&](double floor, double target) -> double {
        auto it = std::upper_bound(candidates.begin(), candidates.end(), target);
        if (it == candidates.begin() || !(*(it - 1) > floor))
            throw PlateauResolutionFailure("no admissible cut height in (" + std::to_string(floor) + ", " +
                                           std::to_string(target) + "]");
        return *(it - 1);
    };

    std::vector<double> levels;
    if (min_lo + gap >= max_hi)
        levels.push_back(max_hi);
    else
        levels.push_back(pick(-std::numeric_limits<double>::infinity(), min_lo + gap));
    while (levels.back() < max_hi) {
        const double target = levels.back() + gap;
        levels.push_back(target >= max_hi ? max_hi : pick(levels.back(), target));
    }

    std::vector<std::vector<std::pair<Rational, Rational>>> runs(levels.size());
    std::size_t prev_level = levels.size();
    double run_start = 0.0;
    auto close_run = [&](double end) {
        if (prev_level < levels.size())
            runs[prev_level].emplace_back(exact_from_double(run_start), exact_from_double(end));
    };
    for (const Cell& c : cells) {
        const auto lv = static_cast<std::size_t>(
            std::lower_bound(levels.begin(), levels.end(), c.range.hi) - levels.begin());
        if (lv != prev_level) {
            close_run(c.lo);
            prev_level = lv;
            run_start = c.lo;
        }
    }
    close_run(1.0);

    std::vector<StepPiece> pieces;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (runs[i].empty())
            continue;
        pieces.push_back({IntervalSet::from_half_open_runs(std::move(runs[i])), negate ? -levels[i] : levels[i],
                          std::nullopt});
    }
    return StepFunction(std::move(pieces));
}

SandwichResult sandwich_check(const StepFunction& phi, const CircleElement& a, double eps, long long n)
{
    if (n < 1)
        throw std::invalid_argument("sandwich_check needs N >= 1");
    SandwichResult out;
    std::vector<double> logs;
    for (const StepPiece& p : phi.pieces()) {
        if (!(p.value > 0.0))
            throw NonPositiveWeight("step function value must be positive");
        const double la = std::log(p.value);
        const double m = to_double(p.set.measure());
        logs.push_back(la);
        out.log_lower += std::min((m - eps) * la, (m + eps) * la);
        out.log_upper += std::max((m - eps) * la, (m + eps) * la);
    }

    auto fold = [](long double v) {
        v -= std::floor(v);
        return v >= 1.0L ? 0.0L : v;
    };
    // x - n a in E  <=>  x in E + n a
    std::vector<long double> shifts(static_cast<std::size_t>(n));
    for (long long j = 0; j < n; ++j)
        shifts[static_cast<std::size_t>(j)] = orbit_angle(a, j, +1);

    detail::EventSweep<long double, double> total;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const IntervalSet& e = phi.pieces()[i].set;
        detail::EventSweep<long double, long long> count;
        for (long double s : shifts) {
            for (const Arc& arc : e.arcs()) {
                const long double lo = fold(to_double(arc.lo) + s);
                const long double hi = fold(to_double(arc.hi) + s);
                total.add_arc(lo, hi, logs[i]);
                count.add_arc(lo, hi, 1);
            }
            for (const Rational& pt : e.points()) {
                const long double q = fold(to_double(pt) + s);
                total.add_point(q, logs[i]);
                count.add_point(q, 1);
            }
        }
        const double m = to_double(e.measure());
        count.run(1.0L, [&](long long c, long double, long double, bool) {
            out.count_deviation = std::max(out.count_deviation, std::abs(static_cast<double>(c) / n - m));
        });
    }

    bool first = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    out.samples = total.run(1.0L, [&](double v, long double lo, long double hi, bool at_event) {
        const double mean = v / static_cast<double>(n);
        if (first || mean < out.log_min)
            out.log_min = mean;
        if (first || mean > out.log_max)
            out.log_max = mean;
        first = false;
        const double margin = std::min(mean - out.log_lower, out.log_upper - mean);
        if (margin < worst_margin) {
            worst_margin = margin;
            out.witness = static_cast<double>(at_event ? lo : fold((lo + hi) / 2));
        }
    });
    constexpr double slack = 1e-12;
    out.holds = out.log_min >= out.log_lower - slack && out.log_max <= out.log_upper + slack;
    return out;
}

} // namespace hclab
