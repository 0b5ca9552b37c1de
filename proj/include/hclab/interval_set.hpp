#pragma once

#include "hclab/borel_form.hpp"
#include "hclab/circle.hpp"
#include "hclab/rational.hpp"

#include <utility>
#include <vector>

namespace hclab {

/// Open arc (lo, hi) of [0, 1) with 0 <= lo < hi <= 1.
struct Arc {
    Rational lo;
    Rational hi;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// A member of the algebra on the circle: finitely many open arcs plus
/// finitely many isolated points, all endpoints exact rationals.
///
/// The representation is canonical. Arcs are sorted, pairwise disjoint and
/// maximal: two arcs sharing an endpoint that the set contains are merged.
/// Arcs never run across 0, so a set containing a neighbourhood of 0 stores
/// 0 as a point between an arc ending at 1 and an arc starting at 0. Every
/// stored point lies outside every arc. Equal sets compare equal.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet full();
    /// Interval from lo to hi with the given endpoint flags; lo, hi in [0, 1].
    /// lo > hi wraps through 0. lo == hi gives a point (both closed) or nothing.
    static IntervalSet interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
    static IntervalSet point(const Rational& x);
    /// Union of half-open runs [lo, hi) with 0 <= lo < hi <= 1, pairwise disjoint.
    static IntervalSet from_half_open_runs(std::vector<std::pair<Rational, Rational>> runs);

    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const std::vector<Rational>& points() const noexcept { return points_; }
    bool empty() const noexcept { return arcs_.empty() && points_.empty(); }

    /// Haar measure: total arc length.
    Rational measure() const;

    /// Exact membership; arguments are folded mod 1 first.
    bool contains(const Rational& x) const;
    bool contains(double x) const;
    bool contains(const CircleElement& x) const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet difference(const IntervalSet& other) const;
    IntervalSet complement() const;

    /// The set shifted by t: {y + t : y in this}.
    IntervalSet translated(const Rational& t) const;

    /// Topological interior (the open arcs, with merged neighbours).
    IntervalSet interior() const;
    /// Arc endpoints and isolated points, sorted; a finite, hence null, set.
    std::vector<Rational> boundary() const;

    FormTag form() const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b)
    {
        return a.arcs_ == b.arcs_ && a.points_ == b.points_;
    }

private:
    template <class Membership>
    static IntervalSet from_atoms(std::vector<Rational> breakpoints, Membership&& inside);
    void refresh_brackets();

    std::vector<Arc> arcs_;
    std::vector<Rational> points_;
    std::vector<std::pair<DoubleBracket, DoubleBracket>> arc_brackets_;
    std::vector<DoubleBracket> point_brackets_;
};

} // namespace hclab
