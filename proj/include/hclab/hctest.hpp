#pragma once

#include "hclab/group.hpp"
#include "hclab/padic_criteria.hpp"
#include "hclab/weight.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hclab {

enum class VerdictKind { NotHypercyclic, NecessaryConditionsPassed };

enum class RuleKind { None, Torsion, MonotoneWeightPower, LogIntegralNonzero, ULEmpty, LocallyConstant };

std::string to_string(VerdictKind v);
std::string to_string(RuleKind r);

struct ScanRow {
    long long n = 0;
    double min = 0.0;
    double max = 0.0;
    /// Exact extremes over all x when the pipeline is exact.
    std::optional<Rational> exact_min;
    std::optional<Rational> exact_max;
};

struct MonotoneScan {
    /// Smallest n with w_n >= 1 everywhere or w_n <= 1 everywhere.
    std::optional<long long> n;
    bool above = false;
    bool below = false;
    /// "exact": every value of w_n was compared exactly;
    /// "certified": interval enclosures prove the inequality on the whole circle;
    /// "grid": only the evaluation grid supports it.
    std::string evidence;
    std::vector<ScanRow> trace;
};

/// Scans n = 1 .. n_max. Circle expressions use a uniform grid of
/// `grid` points and then try to certify a hit with interval enclosures on
/// the grid cells; step weights are evaluated at every breakpoint and gap;
/// tables are exact.
MonotoneScan monotone_power_scan(const Weight& w, const Element& a, long long n_max, std::size_t grid = 4096);

struct VerdictConfig {
    long long monotone_n_max = 50;
    long long ul_n_max = 9;
    std::size_t quadrature_nodes = 1u << 16;
    double log_tolerance = 1e-5;
    std::size_t scan_grid = 4096;
};

struct CosetVerdict;

/// Outcome of the necessary-condition battery. NecessaryConditionsPassed only
/// says no implemented test fired; it never claims hypercyclicity.
struct VerdictReport {
    VerdictKind verdict = VerdictKind::NecessaryConditionsPassed;
    RuleKind rule = RuleKind::None;
    std::optional<long long> n;
    std::optional<int> k;
    std::optional<double> value;
    std::optional<std::string> exact_value;
    std::string witness;
    std::string evidence;
    std::vector<std::string> tests_run;

    std::optional<LogIntegral> log_integral;
    std::optional<MonotoneScan> scan;
    std::vector<ULWitness> ul_trace;
    std::vector<CosetVerdict> cosets;
    VerdictConfig config;
};

struct CosetVerdict {
    CosetProblem problem;
    VerdictReport report;
};

/// Runs, in order: torsion, monotone power scan, log-integral, and on p-adic
/// groups the locally constant obstruction and the U/L scan. The first rule
/// that fires decides. Windowed p-adic problems are split into Z_p problems
/// per coset of p^{v_p(a)} Z_p after the global tests.
///
/// For a weight that is constant on the cosets of p^k Z_p with k >= 1 the
/// monotone scan stops at n = p^k - 1 and the obstruction at n = p^k reports it.
VerdictReport verdict(const Weight& w, const Element& a, const VerdictConfig& config = {});

} // namespace hclab
