#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "greedy/pointprocess.hpp"
#include "greedy/solver.hpp"
#include "greedy/stats.hpp"

namespace greedy {

// Everything a Monte Carlo campaign needs to know about the process under
// study. Replicate r of a table with seed s is sampled from derive_seed(s, r),
// and all aggregation is order-independent, so worker count never shows.
struct ProcessModel {
    int dim = 2;
    MarkLaw law;
    int workers = 1;
    int solve_cap = 0;  // hard per-solve cap; 0 = derived from the expected count
};

// Throws capacity_error when the expected atom count of the experiment window
// exceeds the configured cap.
void check_capacity(const ProcessModel& model, double ell_max, double beta);

// Hard per-solve atom cap for replicate solves: generous above the expected
// count, so Poisson fluctuation never aborts a capacity-checked experiment.
int derived_solve_cap(const ProcessModel& model, double ell, double beta);

// One greedy value for an already sampled configuration: exact path optimum,
// or the animal bracket's certified lower end (the conservative side used for
// all animal estimates). delta > 0 restricts to the diamond (two-anchor only).
double greedy_value(const PointConfiguration& config, Variant variant, double beta, double ell,
                    double delta = 0.0, int cap = 0);

enum class TailMode { upper, lower };

struct TailEstimate {
    Variant variant = Variant::path;
    TailMode mode = TailMode::upper;
    double beta = 0.0;
    double zeta = 0.0;
    double ell = 0.0;
    long replicates = 0;
    long hits = 0;
    double p_hat = 0.0;
    Interval ci95;
    double rate_hat = 0.0;  // -log(p)/ell, or -log(p)/ell^d in lower mode; +inf when hits = 0
    double rate_lo = 0.0;
    double rate_hi = 0.0;
    std::uint64_t seed = 0;
};

struct LimitEstimate {
    double beta = 0.0;
    Variant variant = Variant::path;
    std::vector<double> ell_grid;
    std::vector<MeanSE> means;  // of G(ell)/ell per grid point
    double extrapolated = 0.0;  // largest-ell mean; no model-based extrapolation
    double extrapolated_se = 0.0;
};

LimitEstimate estimate_limit(const ProcessModel& model, double beta, Variant variant,
                             const std::vector<double>& ell_grid, long replicates,
                             std::uint64_t seed);

TailEstimate empirical_tail(const ProcessModel& model, double beta, double zeta, double ell,
                            Variant variant, TailMode mode, long replicates, std::uint64_t seed,
                            double delta = 0.0);

struct FeketeRow {
    double ell1 = 0.0, ell2 = 0.0;
    double a1 = 0.0, a2 = 0.0, a12 = 0.0;  // a_ell = -log p_hat(ell)
    double slack = 0.0;                    // a12 - a1 - a2, expected <= 0
    double sigma = 0.0;                    // propagated Monte Carlo error of the slack
    bool conclusive = true;                // false when any arm had zero hits
};

// Subadditivity audit for the diamond process along e1.
std::vector<FeketeRow> fekete_audit(const ProcessModel& model, double beta, double zeta,
                                    double delta,
                                    const std::vector<std::pair<double, double>>& ell_pairs,
                                    long replicates, std::uint64_t seed);

enum class FloorKind { unpen, pen };

struct RateFloorParams {
    FloorKind kind = FloorKind::unpen;
    double limit = 0.0;  // estimated limit constant for this beta
    double m = 1.0;      // mark bound
    double q = 0.0;      // penalty (pen only)
    double c2 = 1.0;     // empirical scaling constant (pen only)
    double nu_below_m = 1.0;  // nu((0,m]) (pen only)
    int dim = 2;
};

struct RateFloorRow {
    double zeta = 0.0;
    double floor_value = 0.0;
    bool below_limit = false;  // zeta <= limit: floor 0 by convention
};

std::vector<RateFloorRow> bounds_rate_floor(const RateFloorParams& params,
                                            const std::vector<double>& zeta_grid);

struct ScalingRow {
    double intensity = 0.0;
    double mean_n_over_ell = 0.0;
    double se = 0.0;
    double c_hat = 0.0;  // (E[N]/ell) / intensity^(1/d)
};

struct ScalingTable {
    std::vector<ScalingRow> rows;
    double calibrated_c2 = 0.0;  // c_hat at the largest intensity; empirical
};

// E[N(ell)]/ell across intensities on Dirac projections; fits the
// intensity^(1/d) proportionality and reports the empirical constant.
ScalingTable dirac_scaling_check(const ProcessModel& model, const std::vector<double>& intensity_grid,
                                 double ell, long replicates, std::uint64_t seed);

struct CounterexampleRow {
    double ell = 0.0;
    TailEstimate heavy;    // the no-exponential-moment arm
    TailEstimate control;  // bounded-mark control arm
};

std::vector<CounterexampleRow> moment_counterexample(const ProcessModel& base,
                                                     const std::vector<double>& ell_grid,
                                                     const MarkLaw& pareto_law,
                                                     const MarkLaw& control_law, double zeta,
                                                     long replicates, std::uint64_t seed);

// CSV emission. Every header carries a schema string; numbers use 17
// significant digits so a parse recovers identical values.
inline constexpr const char* kRateTableSchema = "greedy-rate-table-v1";
inline constexpr const char* kLimitTableSchema = "greedy-lln-table-v1";
inline constexpr const char* kFeketeTableSchema = "greedy-fekete-table-v1";
inline constexpr const char* kScalingTableSchema = "greedy-scaling-table-v1";

std::string format17(double x);
void write_tail_csv(const std::vector<TailEstimate>& rows, std::ostream& os);
void write_limit_csv(const LimitEstimate& estimate, std::ostream& os);
void write_fekete_csv(const std::vector<FeketeRow>& rows, std::ostream& os);
void write_scaling_csv(const ScalingTable& table, std::ostream& os);

// Runs fn(r) for r in [0, n) over `workers` threads, results stored by index.
std::vector<double> run_replicates(long n, int workers, const std::function<double(long)>& fn);

}  // namespace greedy
