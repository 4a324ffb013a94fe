#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "greedy/estimators.hpp"
#include "greedy/pointprocess.hpp"
#include "greedy/solver.hpp"

namespace greedy {

struct CheckReport {
    std::string name;
    long instances = 0;   // realizations or grid points tested
    long violations = 0;  // beyond the stated tolerance
    double worst_slack = 0.0;  // most positive violation amount; <= 0 when clean
    double sigma = 0.0;        // Monte Carlo sigma where applicable
    bool pass = false;
    std::vector<std::pair<std::string, double>> notes;
};

// Stable-field-order JSON object, one line per report.
std::string check_report_json(const CheckReport& report);

// ---- exact per-realization checks (theorems; zero tolerance) ----

struct ConcatenationParams {
    double delta = 0.5;
    std::vector<Point> anchors;   // x_0 ... x_k along a common direction
    std::vector<double> budgets;  // ell_1 ... ell_k
    int cap = 0;
    int max_atoms = 20;  // suites skip seeded configs above this count
};

// Per realization: sum_i G^delta(x_{i-1} -> x_i, ell_i) <= G(x_0 -> x_k, sum ell_i).
// Throws invalid_argument when an atom sits in two chain diamonds (the
// concatenation hypothesis requires intersections of zero mass).
CheckReport check_concatenation(const PointConfiguration& config, const ConcatenationParams& params);

struct CorridorParams {
    double beta = 0.15;
    double delta = 0.8;  // corridor parameter of the winning-configuration event
    double length = 0.6;  // L, the per-diamond budget
    double ell = 10.0;
    int rows = 2;  // rows 0 .. rows-1, offset by 2L along e_2
    int cap = 0;
    int max_atoms = 40;
};

// Per realization and per corridor row: the two-anchor optimum dominates the
// row's chain of aperture-1/2 diamond optima.
CheckReport check_corridor(const PointConfiguration& config, const CorridorParams& params);

// Per realization, for f = P(ell)/m with marks bounded by m: leave-one-out
// decrements lie in [0, mark] and sum to at most the optimum. Exact arithmetic.
CheckReport check_self_bounding(const PointConfiguration& config, double ell, double mark_bound,
                                int cap = 0);

// Per realization: P(ell) <= A_lower <= A_upper <= P(2 ell).
CheckReport check_gross_chain(const PointConfiguration& config, double ell, int cap = 0);

// ---- aggregated drivers over seeded configurations ----

CheckReport run_concatenation_suite(const ProcessModel& model, const ConcatenationParams& params,
                                    double window_ell, double window_beta, int n_configs,
                                    std::uint64_t seed);
CheckReport run_corridor_suite(const ProcessModel& model, const CorridorParams& params,
                               int n_configs, std::uint64_t seed);
CheckReport run_self_bounding_suite(const ProcessModel& model, double ell, int n_configs,
                                    std::uint64_t seed, int max_atoms = 12);
CheckReport run_gross_chain_suite(const ProcessModel& model, double ell, int n_configs,
                                  std::uint64_t seed, int max_atoms = 12);

// ---- stochastic domination checks (one-sided 3 sigma tolerance) ----

struct ConcentrationParams {
    Variant variant = Variant::path;
    double beta = 0.0;
    double ell = 8.0;
    std::vector<double> t_factors = {0.5, 1.0, 2.0};  // t = factor * empirical mean
    long replicates = 10000;
};

// Empirical upper tail against exp(-h(t/E) E/m), the bound evaluated at the
// conservative end E - 2 SE of the plug-in mean.
CheckReport check_concentration_unpen(const ProcessModel& model, const ConcentrationParams& params,
                                      std::uint64_t seed);

struct PenConcentrationParams {
    double q = 0.5;
    double alpha = 1.0;
    double beta = 0.0;
    double ell = 8.0;
    std::vector<double> t_factors = {0.5, 1.0, 2.0};
    long replicates = 10000;
};

// Penalized two-term bound exp(-h(alpha) E[N]) + exp(-t^2/((1+alpha) E[N] (q+m)^2)),
// with A-values taken as bracket lower ends and E[N] estimated on Dirac
// projections of the same replicates.
CheckReport check_concentration_pen(const ProcessModel& model, const PenConcentrationParams& params,
                                    std::uint64_t seed);

struct BkParams {
    double beta = 0.4;       // anchor offset fraction
    double ell = 6.0;
    double split_fraction = 0.5;  // hyperplane at split_fraction * beta * ell along e_1
    double zeta = 0.0;            // threshold t = zeta * ell
    long replicates = 10000;
};

// Disjoint-occurrence bound: P(G >= t) <= sum over integer splits
// t1 + t2 in [t-2, t] of P(G1 >= t1) P(G2 >= t2), the three tails estimated
// on independent runs. G is the two-anchor optimum, G1/G2 free-path optima on
// the two sides of the splitting hyperplane.
CheckReport check_bk_decomposition(const ProcessModel& model, const BkParams& params,
                                   std::uint64_t seed);

}  // namespace greedy
