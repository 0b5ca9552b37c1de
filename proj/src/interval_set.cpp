#include "hclab/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace hclab {

namespace {

void sort_unique(std::vector<Rational>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Rational fold(const Rational& x)
{
    if (x >= 0 && x < 1)
        return x;
    return frac(x);
}

void check_unit(const Rational& x)
{
    if (x < 0 || x > 1)
        throw std::invalid_argument("interval endpoint " + to_string(x) + " is outside [0, 1]");
}

} // namespace

template <class Membership>
IntervalSet IntervalSet::from_atoms(std::vector<Rational> breakpoints, Membership&& inside)
{
    breakpoints.push_back(Rational(0));
    sort_unique(breakpoints);

    IntervalSet s;
    bool open = false;
    Rational start;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const Rational& b = breakpoints[i];
        const Rational next = i + 1 < breakpoints.size() ? breakpoints[i + 1] : Rational(1);
        const bool point_in = inside(b);
        const bool gap_in = inside((b + next) / 2);
        if (open) {
            if (point_in && gap_in)
                continue;
            s.arcs_.push_back({start, b});
            open = false;
        }
        if (point_in)
            s.points_.push_back(b);
        if (gap_in) {
            open = true;
            start = b;
        }
    }
    if (open)
        s.arcs_.push_back({start, Rational(1)});
    s.refresh_brackets();
    return s;
}

void IntervalSet::refresh_brackets()
{
    arc_brackets_.clear();
    point_brackets_.clear();
    arc_brackets_.reserve(arcs_.size());
    for (const Arc& a : arcs_)
        arc_brackets_.emplace_back(DoubleBracket(a.lo), DoubleBracket(a.hi));
    point_brackets_.reserve(points_.size());
    for (const Rational& p : points_)
        point_brackets_.emplace_back(p);
}

IntervalSet IntervalSet::full()
{
    IntervalSet s;
    s.arcs_.push_back({Rational(0), Rational(1)});
    s.points_.push_back(Rational(0));
    s.refresh_brackets();
    return s;
}

IntervalSet IntervalSet::point(const Rational& x)
{
    IntervalSet s;
    s.points_.push_back(fold(x));
    s.refresh_brackets();
    return s;
}

IntervalSet IntervalSet::interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed)
{
    check_unit(lo);
    check_unit(hi);
    if (lo == hi) {
        if (lo_closed && hi_closed)
            return point(lo);
        return IntervalSet{};
    }

    std::vector<Arc> raw_arcs;
    std::vector<Rational> raw_points;
    if (lo < hi) {
        raw_arcs.push_back({lo, hi});
    } else {
        raw_arcs.push_back({lo, Rational(1)});
        if (hi > 0) {
            raw_arcs.push_back({Rational(0), hi});
            raw_points.push_back(Rational(0));
        }
    }
    if (lo_closed)
        raw_points.push_back(fold(lo));
    if (hi_closed)
        raw_points.push_back(fold(hi));

    std::vector<Rational> bps = raw_points;
    for (const Arc& a : raw_arcs) {
        bps.push_back(fold(a.lo));
        bps.push_back(fold(a.hi));
    }
    return from_atoms(std::move(bps), [&](const Rational& x) {
        for (const Rational& p : raw_points)
            if (p == x)
                return true;
        for (const Arc& a : raw_arcs)
            if (a.lo < x && x < a.hi)
                return true;
        return false;
    });
}

IntervalSet IntervalSet::from_half_open_runs(std::vector<std::pair<Rational, Rational>> runs)
{
    std::sort(runs.begin(), runs.end());
    IntervalSet s;
    for (const auto& [lo, hi] : runs) {
        check_unit(lo);
        check_unit(hi);
        if (!(lo < hi))
            throw std::invalid_argument("from_half_open_runs: empty or reversed run");
        if (!s.arcs_.empty()) {
            Arc& last = s.arcs_.back();
            if (lo < last.hi)
                throw std::invalid_argument("from_half_open_runs: overlapping runs");
            if (lo == last.hi) {
                last.hi = hi;
                continue;
            }
        }
        s.arcs_.push_back({lo, hi});
        s.points_.push_back(lo);
    }
    s.refresh_brackets();
    return s;
}

Rational IntervalSet::measure() const
{
    Rational m = 0;
    for (const Arc& a : arcs_)
        m += a.hi - a.lo;
    return m;
}

bool IntervalSet::contains(const Rational& x_in) const
{
    const Rational x = fold(x_in);
    if (std::binary_search(points_.begin(), points_.end(), x))
        return true;
    auto it = std::partition_point(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.lo < x; });
    if (it == arcs_.begin())
        return false;
    --it;
    return x < it->hi;
}

bool IntervalSet::contains(double x_in) const
{
    const double x = fold_unit(x_in);
    auto pit = std::partition_point(point_brackets_.begin(), point_brackets_.end(),
                                    [&](const DoubleBracket& b) { return b.greater(x); });
    if (pit != point_brackets_.end() && pit->equal(x))
        return true;
    // first arc whose lo is not below x
    auto it = std::partition_point(arc_brackets_.begin(), arc_brackets_.end(),
                                   [&](const auto& b) { return b.first.greater(x); });
    if (it == arc_brackets_.begin())
        return false;
    --it;
    return it->second.less(x);
}

bool IntervalSet::contains(const CircleElement& x) const
{
    if (x.is_exact())
        return contains(*x.exact());
    return contains(x.angle());
}

namespace {

std::vector<Rational> breakpoints_of(const IntervalSet& s)
{
    std::vector<Rational> b = s.points();
    for (const Arc& a : s.arcs()) {
        b.push_back(a.lo);
        b.push_back(a.hi == 1 ? Rational(0) : a.hi);
    }
    return b;
}

} // namespace

IntervalSet IntervalSet::unite(const IntervalSet& other) const
{
    auto bps = breakpoints_of(*this);
    auto more = breakpoints_of(other);
    bps.insert(bps.end(), more.begin(), more.end());
    return from_atoms(std::move(bps), [&](const Rational& x) { return contains(x) || other.contains(x); });
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const
{
    auto bps = breakpoints_of(*this);
    auto more = breakpoints_of(other);
    bps.insert(bps.end(), more.begin(), more.end());
    return from_atoms(std::move(bps), [&](const Rational& x) { return contains(x) && other.contains(x); });
}

IntervalSet IntervalSet::difference(const IntervalSet& other) const
{
    auto bps = breakpoints_of(*this);
    auto more = breakpoints_of(other);
    bps.insert(bps.end(), more.begin(), more.end());
    return from_atoms(std::move(bps), [&](const Rational& x) { return contains(x) && !other.contains(x); });
}

IntervalSet IntervalSet::complement() const
{
    return from_atoms(breakpoints_of(*this), [&](const Rational& x) { return !contains(x); });
}

IntervalSet IntervalSet::translated(const Rational& t) const
{
    const Rational shift = fold(t);
    std::vector<Rational> bps;
    for (const Rational& b : breakpoints_of(*this))
        bps.push_back(fold(b + shift));
    return from_atoms(std::move(bps), [&](const Rational& y) { return contains(y - shift); });
}

IntervalSet IntervalSet::interior() const
{
    IntervalSet s;
    s.arcs_ = arcs_;
    if (!arcs_.empty() && !points_.empty() && points_.front() == 0 && arcs_.front().lo == 0 &&
        arcs_.back().hi == 1)
        s.points_.push_back(Rational(0));
    s.refresh_brackets();
    return s;
}

std::vector<Rational> IntervalSet::boundary() const
{
    std::vector<Rational> b = breakpoints_of(*this);
    sort_unique(b);
    const IntervalSet inner = interior();
    std::erase_if(b, [&](const Rational& x) { return inner.contains(x); });
    return b;
}

FormTag IntervalSet::form() const
{
    if (arcs_.empty())
        return FormTag::Form2;
    for (const Rational& p : points_) {
        bool endpoint = false;
        for (const Arc& a : arcs_) {
            if (a.lo == p || a.hi == p || (p == 0 && a.hi == 1)) {
                endpoint = true;
                break;
            }
        }
        if (!endpoint)
            return FormTag::Form3;
    }
    return FormTag::Form1;
}

} // namespace hclab
