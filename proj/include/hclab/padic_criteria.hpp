#pragma once

#include "hclab/ball_set.hpp"
#include "hclab/padic.hpp"
#include "hclab/weight.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hclab {

/// Table of w_n at the level of w's table: entry r is w_n on the coset r.
std::vector<Rational> weight_product_table(const Weight& w, const PAdicNumber& a, long long n);

/// U and L sets of w_n on the ball B(x', |na|_p), enumerated at the table's resolution.
struct ULWitness {
    long long n = 0;
    PAdicNumber center;
    /// v_p(na); nullopt when na vanishes at the stored precision.
    std::optional<int> valuation{};
    /// |na|_p.
    Rational radius{};
    /// Stored digits fixed by the ball (v_p(na) + m, capped at the precision).
    unsigned ball_level = 0;
    /// Residues modulo p^{table level} that make up the ball.
    std::size_t cosets = 0;
    /// Table residues where w_n > 1 and where w_n < 1.
    std::vector<std::uint64_t> upper{};
    std::vector<std::uint64_t> lower{};

    bool upper_nonempty() const noexcept { return !upper.empty(); }
    bool lower_nonempty() const noexcept { return !lower.empty(); }
};

/// n >= 1 and x' in the weight's context; exact comparisons against 1.
ULWitness ul_sets(const Weight& w, const PAdicNumber& a, long long n, const PAdicNumber& center);

/// Smallest k (radius exponent, so stored level k + m) with w constant on
/// every coset of p^k Z_p; nullopt when the table varies at its own finest
/// level and is not declared locally constant.
std::optional<int> is_locally_constant(const Weight& w);

struct ObstructionFragment {
    int k = 0;
    long long n = 0;
    /// w_n on B(0, |na|_p), constant there.
    Rational value;
    ULWitness witness;
};

/// For a k-u.l.c. weight on Z_p, w_{p^k} is constant on B(0, |p^k a|_p), so
/// U or L is empty there. Throws InternalInconsistency if both are nonempty.
std::optional<ObstructionFragment> locally_constant_obstruction(const Weight& w, const PAdicNumber& a);

struct CosetLogIntegral {
    /// The coset b + p^k Z_p, b given in the active context.
    PAdicNumber representative;
    int radius_exp = 0;
    /// Integral of ln w over the coset against Haar measure normalized to 1 on the coset.
    LogMass mean;
    /// The same integral against the global normalized Haar measure.
    LogMass mass;
};

struct CosetLogIntegrals {
    std::vector<CosetLogIntegral> cosets;
    LogMass total;
    /// total equals the global log-integral exactly.
    bool total_matches = false;
};

/// One entry per coset of p^k Z_p, k = v_p(a). Throws WindowExceeded for a = 0.
CosetLogIntegrals coset_log_integrals(const Weight& w, const PAdicNumber& a);

/// x -> w(x + x').
Weight conjugate_translate(const Weight& w, const PAdicNumber& shift);

struct ConjugationTriple {
    PAdicNumber a;
    Weight w;
    PAdicNumber translate;
    long long n = 0;
    /// v_p(na).
    int scale = 0;
    /// na / p^v, a unit.
    PAdicNumber reduced_a;
    /// x -> w_n(p^v x + x').
    Weight reduced_w;
};

/// Z_p contexts only; throws WindowExceeded when na vanishes at the precision.
ConjugationTriple conjugate_scale(const Weight& w, const PAdicNumber& a, long long n, const PAdicNumber& translate);

struct DiagramCheck {
    std::string name;
    std::size_t basis_size = 0;
    std::size_t failures = 0;

    bool commutes() const noexcept { return failures == 0; }
};

/// T_{-x'} T_{a,w} = T_{a, T_{-x'} w} T_{-x'} on the indicators of the finest balls.
DiagramCheck check_translate_diagram(const Weight& w, const PAdicNumber& a, const PAdicNumber& translate);
/// M_{p^v} T_{a, T_{-x'} w}^n = T_{a^{(n)}, w^{(n)}} M_{p^v}, the power computed by n applications.
DiagramCheck check_scale_diagram(const ConjugationTriple& t);
/// M_a T_{a,w} = T_{1, M_a w} M_a.
DiagramCheck check_multiplication_diagram(const Weight& w, const PAdicNumber& a);
/// Res T_{-b} T_{a,w} = T_{a, (T_{-b} w)|} Res T_{-b} on p^k Z_p, k = v_p(a).
DiagramCheck check_restriction_diagram(const Weight& w, const PAdicNumber& a, const PAdicNumber& b);

/// One restricted problem of the windowed reduction: the coset
/// b + p^k Z_p identified with Z_p through y -> b + p^k y.
struct CosetProblem {
    PAdicNumber representative;
    int radius_exp = 0;
    PAdicContext context;
    PAdicNumber a;
    Weight w;
};

/// Splits T_{a,w} on the window into Z_p problems, one per coset of p^k Z_p
/// with k = v_p(a). Throws WindowExceeded when a vanishes at the precision.
std::vector<CosetProblem> qp_reduction(const Weight& w, const PAdicNumber& a);

} // namespace hclab
