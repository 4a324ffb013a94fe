#include "greedy/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace greedy {

namespace {

const char* variant_name(Variant v) { return v == Variant::path ? "path" : "animal"; }

PointConfiguration sample_for(const ProcessModel& model, double ell, double beta,
                              std::uint64_t seed) {
    return sample_ppp(experiment_window(ell, beta, model.dim), model.law, seed);
}

}  // namespace

int derived_solve_cap(const ProcessModel& model, double ell, double beta) {
    if (model.solve_cap > 0) return model.solve_cap;
    const double expected = experiment_window(ell, beta, model.dim).volume() *
                            model.law.effective_intensity();
    return std::max(solver_atom_cap(), static_cast<int>(std::ceil(2.0 * expected)) + 24);
}

void check_capacity(const ProcessModel& model, double ell_max, double beta) {
    const double expected =
        experiment_window(ell_max, beta, model.dim).volume() * model.law.effective_intensity();
    const int cap = solver_atom_cap();
    if (expected > static_cast<double>(cap))
        throw capacity_error("expected atom count " + std::to_string(expected) +
                             " exceeds cap " + std::to_string(cap) +
                             "; lower the intensity or raise GREEDY_FIELDS_CAP");
}

double greedy_value(const PointConfiguration& config, Variant variant, double beta, double ell,
                    double delta, int cap) {
    const Point origin = zero_point(config.dimension);
    SolveSpec spec;
    if (beta == 0.0) {
        spec = variant == Variant::path ? SolveSpec::path_from(origin, ell)
                                        : SolveSpec::animal_from(origin, ell);
        if (delta > 0.0)
            throw std::invalid_argument("greedy_value: diamond restriction needs two anchors");
    } else {
        const Point end = axis_point(config.dimension, 0, beta * ell);
        spec = variant == Variant::path ? SolveSpec::path_between(origin, end, ell)
                                        : SolveSpec::animal_between(origin, end, ell);
        if (delta > 0.0) spec.region = Region::diamond(delta, origin, end);
    }
    if (variant == Variant::path) return max_path_mass(config, spec, cap).value_lower;
    return animal_lower_value(config, spec, cap);
}

std::vector<double> run_replicates(long n, int workers, const std::function<double(long)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    const int nw = std::max(1, workers);
    if (nw == 1) {
        for (long r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = fn(r);
        return out;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long r = next.fetch_add(1);
                if (r >= n) return;
                out[static_cast<std::size_t>(r)] = fn(r);
            }
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

LimitEstimate estimate_limit(const ProcessModel& model, double beta, Variant variant,
                             const std::vector<double>& ell_grid, long replicates,
                             std::uint64_t seed) {
    if (ell_grid.empty()) throw std::invalid_argument("estimate_limit: empty grid");
    for (std::size_t i = 0; i + 1 < ell_grid.size(); ++i)
        if (!(ell_grid[i] < ell_grid[i + 1]))
            throw std::invalid_argument("estimate_limit: grid must be strictly increasing");
    check_capacity(model, ell_grid.back(), beta);

    LimitEstimate out;
    out.beta = beta;
    out.variant = variant;
    out.ell_grid = ell_grid;
    for (std::size_t g = 0; g < ell_grid.size(); ++g) {
        const double ell = ell_grid[g];
        const int cap = derived_solve_cap(model, ell, beta);
        const std::uint64_t grid_seed = derive_seed(seed, g);
        const auto values = run_replicates(replicates, model.workers, [&](long r) {
            const auto config =
                sample_for(model, ell, beta, derive_seed(grid_seed, static_cast<std::uint64_t>(r)));
            return greedy_value(config, variant, beta, ell, 0.0, cap) / ell;
        });
        out.means.push_back(mean_se(values));
    }
    out.extrapolated = out.means.back().mean;
    out.extrapolated_se = out.means.back().se;
    return out;
}

namespace {

TailEstimate tail_from_values(const std::vector<double>& values, double threshold, TailMode mode,
                              double norm) {
    TailEstimate t;
    t.replicates = static_cast<long>(values.size());
    for (double v : values) {
        const bool hit = mode == TailMode::upper ? v >= threshold : v <= threshold;
        if (hit) ++t.hits;
    }
    t.p_hat = static_cast<double>(t.hits) / static_cast<double>(t.replicates);
    t.ci95 = wilson95(t.hits, t.replicates);
    const double inf = std::numeric_limits<double>::infinity();
    t.rate_hat = t.hits == 0 ? inf : -std::log(t.p_hat) / norm;
    t.rate_lo = t.ci95.hi > 0.0 ? -std::log(t.ci95.hi) / norm : inf;
    t.rate_hi = t.ci95.lo > 0.0 ? -std::log(t.ci95.lo) / norm : inf;
    // clamp the p = 1 edge to a clean zero (no negative zeros in reports)
    if (!(t.rate_hat > 0.0) && std::isfinite(t.rate_hat)) t.rate_hat = 0.0;
    if (!(t.rate_lo > 0.0) && std::isfinite(t.rate_lo)) t.rate_lo = 0.0;
    if (!(t.rate_hi > 0.0) && std::isfinite(t.rate_hi)) t.rate_hi = 0.0;
    return t;
}

}  // namespace

TailEstimate empirical_tail(const ProcessModel& model, double beta, double zeta, double ell,
                            Variant variant, TailMode mode, long replicates, std::uint64_t seed,
                            double delta) {
    if (replicates < 100) throw std::invalid_argument("empirical_tail: need at least 100 replicates");
    if (!(zeta >= 0.0)) throw std::invalid_argument("empirical_tail: zeta must be nonnegative");
    check_capacity(model, ell, beta);
    const int cap = derived_solve_cap(model, ell, beta);
    const auto values = run_replicates(replicates, model.workers, [&](long r) {
        const auto config = sample_for(model, ell, beta, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return greedy_value(config, variant, beta, ell, delta, cap);
    });
    const double norm =
        mode == TailMode::upper ? ell : std::pow(ell, static_cast<double>(model.dim));
    TailEstimate t = tail_from_values(values, zeta * ell, mode, norm);
    t.variant = variant;
    t.mode = mode;
    t.beta = beta;
    t.zeta = zeta;
    t.ell = ell;
    t.seed = seed;
    return t;
}

std::vector<FeketeRow> fekete_audit(const ProcessModel& model, double beta, double zeta,
                                    double delta,
                                    const std::vector<std::pair<double, double>>& ell_pairs,
                                    long replicates, std::uint64_t seed) {
    if (!(beta > 0.0) || beta >= 1.0)
        throw std::invalid_argument("fekete_audit: beta must be in (0,1)");
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("fekete_audit: delta must be in (0,1]");
    if (ell_pairs.empty()) throw std::invalid_argument("fekete_audit: no pairs");

    std::vector<double> ells;
    for (const auto& [l1, l2] : ell_pairs) {
        ells.push_back(l1);
        ells.push_back(l2);
        ells.push_back(l1 + l2);
    }
    std::sort(ells.begin(), ells.end());
    ells.erase(std::unique(ells.begin(), ells.end()), ells.end());

    // Capacity is governed by the two-anchor feasibility ellipsoid (the only
    // atoms a diamond solve ever sees), not by the sampling window.
    {
        const double ell_max = ells.back();
        const int d = model.dim;
        const double semi_major = 0.5 * ell_max;
        const double semi_minor = semi_major * std::sqrt(1.0 - beta * beta);
        const double unit_ball = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
        const double volume = unit_ball * semi_major * std::pow(semi_minor, d - 1);
        const double expected = volume * model.law.effective_intensity();
        const int cap = solver_atom_cap();
        if (expected > static_cast<double>(cap))
            throw capacity_error("fekete_audit: expected ellipsoid atom count " +
                                 std::to_string(expected) + " exceeds cap " + std::to_string(cap));
    }

    struct Arm {
        double a = 0.0;
        double sigma = 0.0;
        bool ok = false;
    };
    std::map<double, Arm> arms;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        const double ell = ells[i];
        const int cap = derived_solve_cap(model, ell, beta);
        const std::uint64_t arm_seed = derive_seed(seed, i);
        const auto values = run_replicates(replicates, model.workers, [&](long r) {
            const auto config =
                sample_for(model, ell, beta, derive_seed(arm_seed, static_cast<std::uint64_t>(r)));
            return greedy_value(config, Variant::path, beta, ell, delta, cap);
        });
        long hits = 0;
        for (double v : values)
            if (v >= zeta * ell) ++hits;
        Arm arm;
        arm.ok = hits > 0;
        if (arm.ok) {
            const double p = static_cast<double>(hits) / static_cast<double>(replicates);
            arm.a = -std::log(p);
            arm.sigma = std::sqrt((1.0 - p) / (static_cast<double>(replicates) * p));
        }
        arms[ell] = arm;
    }

    std::vector<FeketeRow> rows;
    for (const auto& [l1, l2] : ell_pairs) {
        const Arm& a1 = arms.at(l1);
        const Arm& a2 = arms.at(l2);
        const Arm& a12 = arms.at(l1 + l2);
        FeketeRow row;
        row.ell1 = l1;
        row.ell2 = l2;
        row.conclusive = a1.ok && a2.ok && a12.ok;
        if (row.conclusive) {
            row.a1 = a1.a;
            row.a2 = a2.a;
            row.a12 = a12.a;
            row.slack = a12.a - a1.a - a2.a;
            row.sigma = std::sqrt(a1.sigma * a1.sigma + a2.sigma * a2.sigma + a12.sigma * a12.sigma);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<RateFloorRow> bounds_rate_floor(const RateFloorParams& params,
                                            const std::vector<double>& zeta_grid) {
    if (!(params.m > 0.0)) throw std::invalid_argument("bounds_rate_floor: m must be positive");
    if (!(params.limit >= 0.0)) throw std::invalid_argument("bounds_rate_floor: bad limit");

    std::vector<RateFloorRow> rows;
    for (double zeta : zeta_grid) {
        RateFloorRow row;
        row.zeta = zeta;
        if (zeta <= params.limit || params.limit == 0.0) {
            row.below_limit = true;
            rows.push_back(row);
            continue;
        }
        if (params.kind == FloorKind::unpen) {
            const double s = (zeta - params.limit) / params.limit;
            row.floor_value = bennett_h(s) * params.limit / params.m;
        } else {
            const double c =
                params.c2 * std::pow(params.nu_below_m, 1.0 / static_cast<double>(params.dim));
            if (!(c > 0.0)) throw std::invalid_argument("bounds_rate_floor: nonpositive scaling c");
            const double gap = zeta - params.limit;
            const double b = gap * gap / (c * (params.q + params.m) * (params.q + params.m));
            // max over alpha of min(h(alpha) c, b/(1+alpha)): the first term
            // increases, the second decreases; the optimum is at the crossing.
            double lo = 0.0, hi = 1.0;
            while (bennett_h(hi) * c < b / (1.0 + hi)) hi *= 2.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (bennett_h(mid) * c < b / (1.0 + mid))
                    lo = mid;
                else
                    hi = mid;
            }
            const double alpha = 0.5 * (lo + hi);
            row.floor_value = std::min(bennett_h(alpha) * c, b / (1.0 + alpha));
        }
        rows.push_back(row);
    }
    return rows;
}

ScalingTable dirac_scaling_check(const ProcessModel& model, const std::vector<double>& intensity_grid,
                                 double ell, long replicates, std::uint64_t seed) {
    if (intensity_grid.empty()) throw std::invalid_argument("dirac_scaling_check: empty grid");
    ScalingTable table;
    for (std::size_t i = 0; i < intensity_grid.size(); ++i) {
        const double intensity = intensity_grid[i];
        ScalingRow row;
        row.intensity = intensity;
        if (intensity > 0.0) {
            ProcessModel m = model;
            m.law = MarkLaw::dirac(1.0, intensity);
            check_capacity(m, ell, 0.0);
            const int cap = derived_solve_cap(m, ell, 0.0);
            const std::uint64_t arm_seed = derive_seed(seed, i);
            const auto values = run_replicates(replicates, model.workers, [&](long r) {
                const auto config =
                    sample_for(m, ell, 0.0, derive_seed(arm_seed, static_cast<std::uint64_t>(r)));
                return greedy_value(dirac_projection(config), Variant::animal, 0.0, ell, 0.0, cap) /
                       ell;
            });
            const auto stats = mean_se(values);
            row.mean_n_over_ell = stats.mean;
            row.se = stats.se;
            row.c_hat = stats.mean / std::pow(intensity, 1.0 / static_cast<double>(model.dim));
        }
        table.rows.push_back(row);
    }
    table.calibrated_c2 = table.rows.back().c_hat;
    return table;
}

std::vector<CounterexampleRow> moment_counterexample(const ProcessModel& base,
                                                     const std::vector<double>& ell_grid,
                                                     const MarkLaw& pareto_law,
                                                     const MarkLaw& control_law, double zeta,
                                                     long replicates, std::uint64_t seed) {
    if (pareto_law.has_exp_moment)
        throw std::invalid_argument(
            "moment_counterexample: the heavy arm must lack an exponential moment");
    std::vector<CounterexampleRow> rows;
    for (std::size_t i = 0; i < ell_grid.size(); ++i) {
        CounterexampleRow row;
        row.ell = ell_grid[i];
        ProcessModel heavy = base;
        heavy.law = pareto_law;
        ProcessModel control = base;
        control.law = control_law;
        row.heavy = empirical_tail(heavy, 0.0, zeta, row.ell, Variant::path, TailMode::upper,
                                   replicates, derive_seed(seed, 2 * i));
        row.control = empirical_tail(control, 0.0, zeta, row.ell, Variant::path, TailMode::upper,
                                     replicates, derive_seed(seed, 2 * i + 1));
        rows.push_back(row);
    }
    return rows;
}

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_tail_csv(const std::vector<TailEstimate>& rows, std::ostream& os) {
    os << "# schema=" << kRateTableSchema << "\n";
    os << "variant,beta,zeta,ell,replicates,hits,p_hat,ci_lo,ci_hi,rate_hat,rate_lo,rate_hi,seed\n";
    for (const TailEstimate& t : rows) {
        os << variant_name(t.variant) << ',' << format17(t.beta) << ',' << format17(t.zeta) << ','
           << format17(t.ell) << ',' << t.replicates << ',' << t.hits << ',' << format17(t.p_hat)
           << ',' << format17(t.ci95.lo) << ',' << format17(t.ci95.hi) << ',' << format17(t.rate_hat)
           << ',' << format17(t.rate_lo) << ',' << format17(t.rate_hi) << ',' << t.seed << '\n';
    }
}

void write_limit_csv(const LimitEstimate& estimate, std::ostream& os) {
    os << "# schema=" << kLimitTableSchema << "\n";
    os << "variant,beta,ell,mean,se,replicates\n";
    for (std::size_t i = 0; i < estimate.ell_grid.size(); ++i) {
        os << variant_name(estimate.variant) << ',' << format17(estimate.beta) << ','
           << format17(estimate.ell_grid[i]) << ',' << format17(estimate.means[i].mean) << ','
           << format17(estimate.means[i].se) << ',' << estimate.means[i].n << '\n';
    }
}

void write_fekete_csv(const std::vector<FeketeRow>& rows, std::ostream& os) {
    os << "# schema=" << kFeketeTableSchema << "\n";
    os << "ell1,ell2,a1,a2,a12,slack,sigma,conclusive\n";
    for (const FeketeRow& r : rows) {
        os << format17(r.ell1) << ',' << format17(r.ell2) << ',' << format17(r.a1) << ','
           << format17(r.a2) << ',' << format17(r.a12) << ',' << format17(r.slack) << ','
           << format17(r.sigma) << ',' << (r.conclusive ? 1 : 0) << '\n';
    }
}

void write_scaling_csv(const ScalingTable& table, std::ostream& os) {
    os << "# schema=" << kScalingTableSchema << "\n";
    os << "# calibrated_c2=" << format17(table.calibrated_c2) << " (empirical)\n";
    os << "intensity,mean_n_over_ell,se,c_hat\n";
    for (const ScalingRow& r : table.rows) {
        os << format17(r.intensity) << ',' << format17(r.mean_n_over_ell) << ',' << format17(r.se)
           << ',' << format17(r.c_hat) << '\n';
    }
}

}  // namespace greedy
