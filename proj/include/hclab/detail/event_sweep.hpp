#pragma once

#include "hclab/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace hclab::detail {

/// Piecewise-constant function on a circle of length `period`, built from
/// weighted open arcs and weighted points. run() visits the value exactly at
/// every breakpoint and on every gap between consecutive breakpoints, which
/// covers every value the function takes.
template <class Pos, class Weight>
struct EventSweep {
    struct Event {
        Pos pos;
        int kind; // 0 arc opens, 1 arc closes, 2 point
        Weight weight;
    };

    std::vector<Event> events;
    Weight initial{}; // value on the gap that wraps through the period end

    /// Open arc from s to t, both already folded into [0, period).
    void add_arc(Pos s, Pos t, Weight w)
    {
        events.push_back({s, 0, w});
        events.push_back({t, 1, w});
        if (!(s < t))
            initial += w;
    }

    void add_point(Pos s, Weight w) { events.push_back({s, 2, w}); }

    /// sample(value, lo, hi, at_event): the value at lo when at_event, else on
    /// the open gap (lo, hi); hi may exceed the period on the wrapping gap.
    template <class Sample>
    std::size_t run(Pos period, Sample&& sample)
    {
        if (events.empty()) {
            sample(Weight{}, Pos(0), period, false);
            return 1;
        }
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
        Weight v = initial;
        std::size_t samples = 0;
        for (std::size_t i = 0; i < events.size();) {
            const Pos p = events[i].pos;
            Weight opens{}, closes{}, hits{};
            std::size_t j = i;
            for (; j < events.size() && events[j].pos == p; ++j) {
                if (events[j].kind == 0)
                    opens += events[j].weight;
                else if (events[j].kind == 1)
                    closes += events[j].weight;
                else
                    hits += events[j].weight;
            }
            const Pos next = j < events.size() ? events[j].pos : events.front().pos + period;
            sample(v - closes + hits, p, p, true);
            v = v - closes + opens;
            sample(v, p, next, false);
            samples += 2;
            i = j;
        }
        return samples;
    }
};

} // namespace hclab::detail
