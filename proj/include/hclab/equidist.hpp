#pragma once

#include "hclab/borel.hpp"
#include "hclab/expression.hpp"
#include "hclab/group.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace hclab {

/// Number of k in [1, N-1] with x_k in K, and the horizon N.
struct DensityCount {
    long long count = 0;
    long long horizon = 0;

    Rational value() const { return Rational(count, horizon); }
};

/// #{x_k in K : 1 <= k < N} / N.
DensityCount dens(const BorelSet& k, const OrbitSequence& seq, long long n);

/// dens of the translated set x^{-1} K.
DensityCount dens_translated(const BorelSet& k, const Element& x, const OrbitSequence& seq, long long n);

struct SupDeviation {
    /// sup over x of |Dens(x) - |K||, exact given the orbit points.
    Rational value;
    long long min_count = 0;
    long long max_count = 0;
    /// A translate where the supremum is attained.
    Element witness;
    /// Number of translates examined (event points and gaps, or group elements).
    std::size_t samples = 0;
};

/// Exact supremum over all translates x.
///
/// On the circle Dens(x) is piecewise constant with breakpoints at
/// (endpoint of K) - x_k, so evaluating at every breakpoint and in every gap
/// is exhaustive. Exact-rational rotations use orbit multiplicities per
/// residue; binary64 rotations sweep the N - 1 orbit points. p-adic and
/// finite groups are enumerated exhaustively.
SupDeviation sup_deviation(const BorelSet& k, const OrbitSequence& seq, long long n);

/// g_{f,N}(x) = (1/N) sum_{n=1}^{N-1} f(x - n a) on the circle.
std::complex<double> ergodic_average(const TestFunction& f, const CircleElement& a, long long n, double x);

/// 2 / (N |1 - e^{2 pi i k a}|); throws FixedCharacter when k a is an integer.
double weyl_bound(long long k, const CircleElement& a, long long n);

struct SweepRow {
    long long horizon = 0;
    double deviation = 0.0;
    /// Weyl bound for a character with k a not an integer.
    std::optional<double> bound;
};

/// sup over x_samples of |g_{f,N}(x) - integral of f| for each N.
std::vector<SweepRow> uniform_convergence_sweep(const TestFunction& f, const CircleElement& a,
                                                const std::vector<long long>& horizons,
                                                const std::vector<double>& x_samples);

/// Orbit point x_k = sign * k * a on the circle, computed in one rounding step.
double orbit_angle(const CircleElement& a, long long k, int sign = -1);

} // namespace hclab
