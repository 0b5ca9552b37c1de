#include "hclab/equidist.hpp"

#include "hclab/detail/event_sweep.hpp"
#include "hclab/detail/overloaded.hpp"
#include "hclab/errors.hpp"
#include "hclab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hclab {

double orbit_angle(const CircleElement& a, long long k, int sign)
{
    return circle::scaled_angle(a.angle(), sign * k);
}

namespace {

void check_horizon(long long n)
{
    if (n < 2)
        throw std::invalid_argument("horizon N must be at least 2");
}

// Calls visit(x_k) for k = 1 .. N-1 in order.
template <class Visit>
void for_each_orbit_point(const OrbitSequence& seq, long long n, Visit&& visit)
{
    std::visit(detail::overloaded{
                   [&](const FiniteGroup& g) {
                       const FiniteElement step = g.pow(std::get<FiniteElement>(seq.a), seq.sign);
                       FiniteElement x = g.identity();
                       for (long long k = 1; k < n; ++k) {
                           x = g.mul(x, step);
                           visit(Element{x});
                       }
                   },
                   [&](const CircleGroup&) {
                       const auto& a = std::get<CircleElement>(seq.a);
                       if (a.is_exact()) {
                           const Rational step = seq.sign * *a.exact();
                           Rational x = 0;
                           for (long long k = 1; k < n; ++k) {
                               x = frac(x + step);
                               visit(Element{CircleElement::from_rational(x)});
                           }
                       } else {
                           for (long long k = 1; k < n; ++k)
                               visit(Element{CircleElement::from_double(orbit_angle(a, k, seq.sign))});
                       }
                   },
                   [&](const PAdicContext&) {
                       const auto& a = std::get<PAdicNumber>(seq.a);
                       const PAdicNumber step = seq.sign < 0 ? -a : a;
                       PAdicNumber x = step - step;
                       for (long long k = 1; k < n; ++k) {
                           x = x + step;
                           visit(Element{x});
                       }
                   },
               },
               seq.group);
}

template <class Pos>
using Sweep = detail::EventSweep<Pos, long long>;

struct Extremes {
    long long min_count = 0;
    long long max_count = 0;
    double min_at = 0.0;
    double max_at = 0.0;
    Rational min_exact;
    Rational max_exact;
    bool exact = false;
    bool first = true;
};

BigInt lcm_big(const BigInt& a, const BigInt& b)
{
    return a / boost::multiprecision::gcd(a, b) * b;
}

SupDeviation finish(const Extremes& e, const Rational& mu, long long n, std::size_t samples, bool exact_witness)
{
    SupDeviation out;
    const Rational hi = abs(Rational(e.max_count, n) - mu);
    const Rational lo = abs(Rational(e.min_count, n) - mu);
    out.min_count = e.min_count;
    out.max_count = e.max_count;
    out.samples = samples;
    const bool use_max = hi >= lo;
    out.value = use_max ? hi : lo;
    if (exact_witness)
        out.witness = CircleElement::from_rational(use_max ? e.max_exact : e.min_exact);
    else
        out.witness = CircleElement::from_double(use_max ? e.max_at : e.min_at);
    return out;
}

SupDeviation sup_circle(const IntervalSet& k, const CircleElement& a, int sign, long long n)
{
    const Rational mu = k.measure();
    Extremes ext;
    auto record = [&](long long c, auto where) {
        if (ext.first || c < ext.min_count) {
            ext.min_count = c;
            where(false);
        }
        if (ext.first || c > ext.max_count) {
            ext.max_count = c;
            where(true);
        }
        ext.first = false;
    };

    if (a.is_exact()) {
        const Rational step = frac(sign * *a.exact());
        const BigInt q = denominator(step);
        BigInt l = q;
        for (const Arc& arc : k.arcs()) {
            l = lcm_big(l, denominator(arc.lo));
            l = lcm_big(l, denominator(arc.hi));
        }
        for (const Rational& pt : k.points())
            l = lcm_big(l, denominator(pt));
        if (l < (BigInt(1) << 62) && (q <= 4 * BigInt(n) || q < (BigInt(1) << 20))) {
            const long long L = static_cast<long long>(l);
            const long long Q = static_cast<long long>(q);
            const long long P = static_cast<long long>(numerator(step));
            const long long scale = L / Q;
            // multiplicity of each residue r = k P mod Q, k = 1 .. N-1
            std::vector<std::pair<long long, long long>> mult;
            if (Q <= n) {
                std::vector<long long> h(static_cast<std::size_t>(Q), 0);
                const long long full = (n - 1) / Q;
                const long long rem = (n - 1) % Q;
                for (long long i = 1; i <= Q; ++i) {
                    const auto r = static_cast<std::size_t>(static_cast<long long>(
                        static_cast<unsigned __int128>(i) * static_cast<unsigned long long>(P) % static_cast<unsigned long long>(Q)));
                    h[r] += full + (i <= rem ? 1 : 0);
                }
                for (long long r = 0; r < Q; ++r)
                    if (h[static_cast<std::size_t>(r)] != 0)
                        mult.emplace_back(r, h[static_cast<std::size_t>(r)]);
            } else {
                for (long long i = 1; i < n; ++i)
                    mult.emplace_back(static_cast<long long>(static_cast<unsigned __int128>(i) *
                                                             static_cast<unsigned long long>(P) % static_cast<unsigned long long>(Q)),
                                      1);
            }
            auto scaled = [&](const Rational& e) {
                return static_cast<long long>(numerator(e) * (l / denominator(e)));
            };
            Sweep<long long> sw;
            for (const auto& [r, w] : mult) {
                const long long shift = r * scale;
                auto fold = [&](long long v) { return ((v - shift) % L + L) % L; };
                for (const Arc& arc : k.arcs())
                    sw.add_arc(fold(scaled(arc.lo)), fold(scaled(arc.hi)), w);
                for (const Rational& pt : k.points())
                    sw.add_point(fold(scaled(pt)), w);
            }
            const std::size_t samples = sw.run(L, [&](long long c, long long lo, long long hi, bool at_event) {
                record(c, [&](bool is_max) {
                    const Rational x = at_event ? Rational(lo, L) : frac(Rational(lo + hi, 2 * L));
                    (is_max ? ext.max_exact : ext.min_exact) = x;
                });
            });
            return finish(ext, mu, n, samples, true);
        }
    }

    // binary64 orbit: breakpoints e - x_k evaluated in extended precision
    std::vector<long double> arc_lo, arc_hi, pts;
    for (const Arc& arc : k.arcs()) {
        arc_lo.push_back(to_double(arc.lo));
        arc_hi.push_back(to_double(arc.hi));
    }
    for (const Rational& pt : k.points())
        pts.push_back(to_double(pt));
    Sweep<long double> sw;
    sw.events.reserve(static_cast<std::size_t>(n) * (2 * arc_lo.size() + pts.size()));
    auto fold = [](long double v) {
        v -= std::floor(v);
        return v >= 1.0L ? 0.0L : v;
    };
    for (long long i = 1; i < n; ++i) {
        const long double x = orbit_angle(a, i, sign);
        for (std::size_t j = 0; j < arc_lo.size(); ++j)
            sw.add_arc(fold(arc_lo[j] - x), fold(arc_hi[j] - x), 1);
        for (long double pt : pts)
            sw.add_point(fold(pt - x), 1);
    }
    const std::size_t samples = sw.run(1.0L, [&](long long c, long double lo, long double hi, bool at_event) {
        record(c, [&](bool is_max) {
            const double x = static_cast<double>(at_event ? lo : fold((lo + hi) / 2));
            (is_max ? ext.max_at : ext.min_at) = x;
        });
    });
    return finish(ext, mu, n, samples, false);
}

SupDeviation sup_padic(const BallSet& k, const PAdicNumber& a, int sign, long long n)
{
    const PAdicContext& ctx = k.context();
    unsigned level = 0;
    for (const Ball& b : k.balls())
        level = std::max(level, b.level);
    const std::uint64_t m = ctx.power(level);
    if (m > (1u << 20))
        throw WindowExceeded("sup_deviation: set resolution p^" + std::to_string(level) + " is too fine to enumerate");
    std::vector<long long> h(m, 0);
    const std::uint64_t step = (sign < 0 ? (m - a.residue_at(level)) % m : a.residue_at(level));
    const long long full = (n - 1) / static_cast<long long>(m);
    const long long rem = (n - 1) % static_cast<long long>(m);
    std::uint64_t r = 0;
    for (long long i = 1; i <= static_cast<long long>(m); ++i) {
        r = (r + step) % m;
        h[r] += full + (i <= rem ? 1 : 0);
    }
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < m; ++i)
        if (h[i] != 0)
            support.push_back(i);
    std::vector<char> in(m);
    for (std::uint64_t i = 0; i < m; ++i)
        in[i] = k.contains_residue(i);

    const Rational mu = k.measure();
    SupDeviation out;
    bool first = true;
    for (std::uint64_t x = 0; x < m; ++x) {
        long long c = 0;
        for (std::uint64_t s : support)
            if (in[(s + x) % m])
                c += h[s];
        if (first || c < out.min_count)
            out.min_count = c;
        if (first || c > out.max_count)
            out.max_count = c;
        const Rational d = abs(Rational(c, n) - mu);
        if (first || d > out.value) {
            out.value = d;
            out.witness = PAdicNumber::from_residue(ctx, x);
        }
        first = false;
    }
    out.samples = m;
    return out;
}

SupDeviation sup_finite(const FiniteSubset& k, const FiniteGroup& g, FiniteElement a, int sign, long long n)
{
    std::vector<long long> h(g.order(), 0);
    const FiniteElement step = g.pow(a, sign);
    const auto period = static_cast<long long>(g.element_order(a));
    const long long full = (n - 1) / period;
    const long long rem = (n - 1) % period;
    FiniteElement x = g.identity();
    for (long long i = 1; i <= period; ++i) {
        x = g.mul(x, step);
        h[x] += full + (i <= rem ? 1 : 0);
    }
    const Rational mu = k.measure();
    SupDeviation out;
    bool first = true;
    for (FiniteElement t = 0; t < g.order(); ++t) {
        long long c = 0;
        for (FiniteElement y = 0; y < g.order(); ++y)
            if (h[y] != 0 && k.contains(g.mul(t, y)))
                c += h[y];
        if (first || c < out.min_count)
            out.min_count = c;
        if (first || c > out.max_count)
            out.max_count = c;
        const Rational d = abs(Rational(c, n) - mu);
        if (first || d > out.value) {
            out.value = d;
            out.witness = t;
        }
        first = false;
    }
    out.samples = g.order();
    return out;
}

} // namespace

DensityCount dens(const BorelSet& k, const OrbitSequence& seq, long long n)
{
    return dens_translated(k, identity(seq.group), seq, n);
}

DensityCount dens_translated(const BorelSet& k, const Element& x, const OrbitSequence& seq, long long n)
{
    check_horizon(n);
    check_set(seq.group, k);
    check_member(seq.group, x);
    check_member(seq.group, seq.a);
    DensityCount out{0, n};
    for_each_orbit_point(seq, n, [&](const Element& xk) {
        if (contains(k, mul(seq.group, x, xk)))
            ++out.count;
    });
    return out;
}

SupDeviation sup_deviation(const BorelSet& k, const OrbitSequence& seq, long long n)
{
    check_horizon(n);
    check_set(seq.group, k);
    check_member(seq.group, seq.a);
    return std::visit(detail::overloaded{
                          [&](const FiniteGroup& g) {
                              return sup_finite(std::get<FiniteSubset>(k), g, std::get<FiniteElement>(seq.a), seq.sign, n);
                          },
                          [&](const CircleGroup&) {
                              return sup_circle(std::get<IntervalSet>(k), std::get<CircleElement>(seq.a), seq.sign, n);
                          },
                          [&](const PAdicContext&) {
                              return sup_padic(std::get<BallSet>(k), std::get<PAdicNumber>(seq.a), seq.sign, n);
                          },
                      },
                      seq.group);
}

std::complex<double> ergodic_average(const TestFunction& f, const CircleElement& a, long long n, double x)
{
    check_horizon(n);
    std::complex<double> sum = 0.0;
    for (long long i = 1; i < n; ++i)
        sum += f.eval(fold_unit(x + orbit_angle(a, i)));
    return sum / static_cast<double>(n);
}

double weyl_bound(long long k, const CircleElement& a, long long n)
{
    if (n < 1)
        throw std::invalid_argument("horizon N must be positive");
    if (a.is_exact() && denominator(frac(*a.exact() * k)) == 1)
        throw FixedCharacter("e^{2 pi i k a} = 1 for k = " + std::to_string(k));
    const double t = circle::scaled_angle(a.angle(), k);
    const double gap = 2.0 * std::abs(std::sin(std::numbers::pi * t));
    if (gap == 0.0)
        throw FixedCharacter("e^{2 pi i k a} = 1 for k = " + std::to_string(k));
    return 2.0 / (static_cast<double>(n) * gap);
}

std::vector<SweepRow> uniform_convergence_sweep(const TestFunction& f, const CircleElement& a,
                                                const std::vector<long long>& horizons,
                                                const std::vector<double>& x_samples)
{
    const std::complex<double> mean = f.mean();
    std::vector<SweepRow> rows(horizons.size());
    parallel_for(horizons.size(), [&](std::size_t i) {
        SweepRow row;
        row.horizon = horizons[i];
        for (double x : x_samples)
            row.deviation = std::max(row.deviation, std::abs(ergodic_average(f, a, horizons[i], x) - mean));
        if (auto k = f.character_index(); k && *k != 0) {
            try {
                row.bound = weyl_bound(*k, a, horizons[i]);
            } catch (const FixedCharacter&) {
            }
        }
        rows[i] = row;
    });
    return rows;
}

} // namespace hclab
