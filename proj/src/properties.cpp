#include "greedy/properties.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace greedy {

namespace {

void note(CheckReport& r, const std::string& key, double value) { r.notes.emplace_back(key, value); }

void finish(CheckReport& r) { r.pass = r.violations == 0; }

double chain_budget_sum(const std::vector<double>& budgets) {
    double s = 0.0;
    for (double b : budgets) s += b;
    return s;
}

}  // namespace

std::string check_report_json(const CheckReport& report) {
    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["instances"] = report.instances;
    j["violations"] = report.violations;
    j["worst_slack"] = report.worst_slack;
    j["sigma"] = report.sigma;
    j["pass"] = report.pass;
    nlohmann::ordered_json notes;
    for (const auto& [k, v] : report.notes) notes[k] = v;
    j["notes"] = notes;
    return j.dump();
}

CheckReport check_concatenation(const PointConfiguration& config, const ConcatenationParams& params) {
    const std::size_t k = params.budgets.size();
    if (params.anchors.size() < 2 || params.anchors.size() != k + 1)
        throw std::invalid_argument("check_concatenation: need k budgets and k+1 anchors");

    // Hypothesis of the concatenation lemma: no atom may carry mass in two
    // chain diamonds, otherwise the two diamond optima could both collect it.
    for (const Atom& a : config.atoms) {
        int hits = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (diamond_contains(params.delta, params.anchors[i], params.anchors[i + 1], a.position))
                ++hits;
        if (hits >= 2) throw std::invalid_argument("check_concatenation: overlapping diamonds");
    }

    double rhs = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        rhs += max_diamond_path_mass(config, params.delta, params.anchors[i], params.anchors[i + 1],
                                     params.budgets[i], params.cap)
                   .value_lower;
    }
    const double lhs = max_path_mass(config,
                                     SolveSpec::path_between(params.anchors.front(),
                                                             params.anchors.back(),
                                                             chain_budget_sum(params.budgets)),
                                     params.cap)
                           .value_lower;

    CheckReport r;
    r.name = "concatenation";
    r.instances = 1;
    r.worst_slack = rhs - lhs;
    if (rhs > lhs) r.violations = 1;
    note(r, "lhs", lhs);
    note(r, "rhs", rhs);
    finish(r);
    return r;
}

CheckReport check_corridor(const PointConfiguration& config, const CorridorParams& params) {
    const int d = config.dimension;
    if (!(params.beta > 0.0) || params.beta >= 1.0 || !(params.delta > 0.0) || params.delta >= 1.0 ||
        !(params.length > 0.0) || !(params.ell > 0.0) || params.rows < 1)
        throw std::invalid_argument("check_corridor: bad parameters");
    const double beta_prime = params.beta / (1.0 - params.delta);
    if (beta_prime > 1.0) throw std::invalid_argument("check_corridor: beta/(1-delta) must be <= 1");
    const int n_diamonds =
        static_cast<int>(std::floor((1.0 - params.delta) * params.ell / params.length));
    if (n_diamonds < 1) throw std::invalid_argument("check_corridor: no room for a diamond chain");
    const int row_cap = static_cast<int>(std::floor(params.delta * params.ell / (4.0 * d)));
    if (params.rows - 1 > row_cap)
        throw std::invalid_argument("check_corridor: rows exceed the corridor count bound");

    const Point origin = zero_point(d);
    const Point target = axis_point(d, 0, params.beta * params.ell);
    const double lhs =
        max_path_mass(config, SolveSpec::path_between(origin, target, params.ell), params.cap)
            .value_lower;

    CheckReport r;
    r.name = "corridor";
    r.instances = params.rows;
    note(r, "lhs", lhs);
    note(r, "diamonds_per_row", n_diamonds);

    for (int row = 0; row < params.rows; ++row) {
        std::vector<Point> chain;
        for (int n = 0; n <= n_diamonds; ++n) {
            Point x = zero_point(d);
            x[0] = static_cast<double>(n) * params.length * beta_prime;
            x[1] = 2.0 * params.length * static_cast<double>(row);
            chain.push_back(std::move(x));
        }
        // Budget feasibility of the detour through this row, checked exactly:
        // out to the row, through the chain, back to the target.
        const double detour = dist(origin, chain.front()) +
                              static_cast<double>(n_diamonds) * params.length +
                              dist(chain.back(), target);
        if (detour > params.ell)
            throw std::invalid_argument("check_corridor: row geometry infeasible");
        for (const Atom& a : config.atoms) {
            int hits = 0;
            for (int n = 0; n < n_diamonds; ++n)
                if (diamond_contains(0.5, chain[static_cast<std::size_t>(n)],
                                     chain[static_cast<std::size_t>(n) + 1], a.position))
                    ++hits;
            if (hits >= 2) throw std::invalid_argument("check_corridor: overlapping diamonds in a row");
        }
        double rhs = 0.0;
        for (int n = 0; n < n_diamonds; ++n) {
            rhs += max_diamond_path_mass(config, 0.5, chain[static_cast<std::size_t>(n)],
                                         chain[static_cast<std::size_t>(n) + 1], params.length,
                                         params.cap)
                       .value_lower;
        }
        const double slack = rhs - lhs;
        r.worst_slack = std::max(r.worst_slack, slack);
        if (rhs > lhs) ++r.violations;
        note(r, "row" + std::to_string(row) + "_rhs", rhs);
    }
    finish(r);
    return r;
}

CheckReport check_self_bounding(const PointConfiguration& config, double ell, double mark_bound,
                                int cap) {
    if (!(mark_bound > 0.0))
        throw std::invalid_argument("check_self_bounding: mark bound must be positive");
    for (const Atom& a : config.atoms)
        if (a.mark > mark_bound)
            throw std::invalid_argument("check_self_bounding: mark above the stated bound");

    const Point origin = zero_point(config.dimension);
    const auto spec = SolveSpec::path_from(origin, ell);
    const double value = max_path_mass(config, spec, cap).value_lower;

    CheckReport r;
    r.name = "self_bounding";
    r.instances = static_cast<long>(config.atoms.size()) + 1;
    double decrement_sum = 0.0;
    for (std::size_t i = 0; i < config.atoms.size(); ++i) {
        PointConfiguration reduced = config;
        reduced.atoms.erase(reduced.atoms.begin() + static_cast<std::ptrdiff_t>(i));
        const double without = max_path_mass(reduced, spec, cap).value_lower;
        const double drop = value - without;
        if (drop < 0.0) {
            ++r.violations;
            r.worst_slack = std::max(r.worst_slack, -drop);
        }
        if (drop > config.atoms[i].mark) {
            ++r.violations;
            r.worst_slack = std::max(r.worst_slack, drop - config.atoms[i].mark);
        }
        decrement_sum += drop;
    }
    if (decrement_sum > value) {
        ++r.violations;
        r.worst_slack = std::max(r.worst_slack, decrement_sum - value);
    }
    note(r, "value", value);
    note(r, "decrement_sum", decrement_sum);
    finish(r);
    return r;
}

CheckReport check_gross_chain(const PointConfiguration& config, double ell, int cap) {
    const Point origin = zero_point(config.dimension);
    const double p_l = max_path_mass(config, SolveSpec::path_from(origin, ell), cap).value_lower;
    const double p_2l =
        max_path_mass(config, SolveSpec::path_from(origin, 2.0 * ell), cap).value_lower;
    const auto bracket = max_animal_mass_bracket(config, SolveSpec::animal_from(origin, ell), cap);

    CheckReport r;
    r.name = "gross_chain";
    r.instances = 3;
    auto expect_le = [&](double a, double b) {
        if (a > b) {
            ++r.violations;
            r.worst_slack = std::max(r.worst_slack, a - b);
        }
    };
    expect_le(p_l, bracket.value_lower);
    expect_le(bracket.value_lower, bracket.value_upper);
    expect_le(bracket.value_upper, p_2l);
    note(r, "p_ell", p_l);
    note(r, "a_lower", bracket.value_lower);
    note(r, "a_upper", bracket.value_upper);
    note(r, "p_2ell", p_2l);
    finish(r);
    return r;
}

namespace {

// Deterministic skip rule shared by the exact suites: walk seeds in order and
// keep the first n configurations within the atom budget.
template <typename Fn>
CheckReport aggregate_configs(const std::string& name, const ProcessModel& model, double window_ell,
                              double window_beta, int n_configs, std::uint64_t seed, int max_atoms,
                              Fn&& per_config) {
    CheckReport total;
    total.name = name;
    long used = 0;
    std::uint64_t stream = 0;
    while (used < n_configs) {
        if (stream > static_cast<std::uint64_t>(n_configs) * 64u + 4096u)
            throw std::runtime_error(name + ": seed stream exhausted; intensity too high?");
        const auto config = sample_ppp(experiment_window(window_ell, window_beta, model.dim),
                                       model.law, derive_seed(seed, stream));
        ++stream;
        if (static_cast<int>(config.atoms.size()) > max_atoms) continue;
        ++used;
        const CheckReport one = per_config(config);
        total.instances += one.instances;
        total.violations += one.violations;
        total.worst_slack = std::max(total.worst_slack, one.worst_slack);
    }
    note(total, "configs", static_cast<double>(used));
    note(total, "seeds_scanned", static_cast<double>(stream));
    finish(total);
    return total;
}

}  // namespace

CheckReport run_concatenation_suite(const ProcessModel& model, const ConcatenationParams& params,
                                    double window_ell, double window_beta, int n_configs,
                                    std::uint64_t seed) {
    return aggregate_configs("concatenation", model, window_ell, window_beta, n_configs, seed,
                             params.max_atoms,
                             [&](const PointConfiguration& c) { return check_concatenation(c, params); });
}

CheckReport run_corridor_suite(const ProcessModel& model, const CorridorParams& params, int n_configs,
                               std::uint64_t seed) {
    return aggregate_configs("corridor", model, params.ell, params.beta, n_configs, seed,
                             params.max_atoms,
                             [&](const PointConfiguration& c) { return check_corridor(c, params); });
}

CheckReport run_self_bounding_suite(const ProcessModel& model, double ell, int n_configs,
                                    std::uint64_t seed, int max_atoms) {
    if (!model.law.support_bound)
        throw std::invalid_argument("self-bounding check needs a bounded-mark law");
    const double m = *model.law.support_bound;
    return aggregate_configs("self_bounding", model, ell, 0.0, n_configs, seed, max_atoms,
                             [&](const PointConfiguration& c) {
                                 return check_self_bounding(c, ell, m, 0);
                             });
}

CheckReport run_gross_chain_suite(const ProcessModel& model, double ell, int n_configs,
                                  std::uint64_t seed, int max_atoms) {
    return aggregate_configs("gross_chain", model, ell, 0.0, n_configs, seed, max_atoms,
                             [&](const PointConfiguration& c) { return check_gross_chain(c, ell, 0); });
}

CheckReport check_concentration_unpen(const ProcessModel& model, const ConcentrationParams& params,
                                      std::uint64_t seed) {
    if (!model.law.support_bound)
        throw std::invalid_argument("concentration check needs a bounded-mark law");
    const double m = *model.law.support_bound;
    check_capacity(model, params.ell, params.beta);

    const int cap = derived_solve_cap(model, params.ell, params.beta);
    const auto values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config = sample_ppp(experiment_window(params.ell, params.beta, model.dim),
                                       model.law, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return greedy_value(config, params.variant, params.beta, params.ell, 0.0, cap);
    });
    const auto stats = mean_se(values);
    const double mean_cons = std::max(1e-9, stats.mean - 2.0 * stats.se);

    CheckReport r;
    r.name = "concentration_unpen";
    r.instances = static_cast<long>(params.t_factors.size());
    note(r, "mean", stats.mean);
    note(r, "se", stats.se);
    note(r, "replicates", static_cast<double>(params.replicates));
    for (double factor : params.t_factors) {
        const double t = factor * stats.mean;
        if (!(t > 0.0)) continue;
        long hits = 0;
        for (double v : values)
            if (v >= stats.mean + t) ++hits;
        const double p = static_cast<double>(hits) / static_cast<double>(params.replicates);
        const double bound = std::exp(-bennett_h(t / mean_cons) * mean_cons / m);
        const double sigma =
            std::sqrt(p * (1.0 - p) / static_cast<double>(params.replicates));
        r.sigma = std::max(r.sigma, sigma);
        const double slack = p - bound - 3.0 * sigma;
        r.worst_slack = std::max(r.worst_slack, slack);
        if (slack > 0.0) ++r.violations;
        note(r, "t" + format17(factor) + "_p", p);
        note(r, "t" + format17(factor) + "_bound", bound);
    }
    finish(r);
    return r;
}

CheckReport check_concentration_pen(const ProcessModel& model, const PenConcentrationParams& params,
                                    std::uint64_t seed) {
    if (!model.law.support_bound)
        throw std::invalid_argument("penalized concentration check needs a bounded-mark law");
    if (model.law.infinite_total)
        throw std::invalid_argument("penalized concentration check needs a finite law");
    const double m = *model.law.support_bound;
    check_capacity(model, params.ell, params.beta);

    const auto window = experiment_window(params.ell, params.beta, model.dim);
    const int cap = derived_solve_cap(model, params.ell, params.beta);
    const auto a_values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config = sample_ppp(window, model.law, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return greedy_value(config, Variant::animal, params.beta, params.ell, 0.0, cap);
    });
    // E[N(ell)] on Dirac projections of the same replicate configurations;
    // N is the unanchored-at-one-end animal count, beta plays no role here.
    const auto n_values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config = sample_ppp(window, model.law, derive_seed(seed, static_cast<std::uint64_t>(r)));
        return greedy_value(dirac_projection(config), Variant::animal, 0.0, params.ell, 0.0, cap);
    });
    const auto a_stats = mean_se(a_values);
    const auto n_stats = mean_se(n_values);

    auto bound_at = [&](double en, double t) {
        if (!(en > 0.0)) return 1.0;
        return std::exp(-bennett_h(params.alpha) * en) +
               std::exp(-t * t / ((1.0 + params.alpha) * en * (params.q + m) * (params.q + m)));
    };

    CheckReport r;
    r.name = "concentration_pen";
    r.instances = static_cast<long>(params.t_factors.size());
    note(r, "mean_a", a_stats.mean);
    note(r, "mean_n", n_stats.mean);
    note(r, "replicates", static_cast<double>(params.replicates));
    for (double factor : params.t_factors) {
        const double t = factor * a_stats.mean;
        if (!(t > 0.0)) continue;
        long hits = 0;
        for (double v : a_values)
            if (v >= a_stats.mean + t) ++hits;
        const double p = static_cast<double>(hits) / static_cast<double>(params.replicates);
        double bound = 1.0;
        for (double en : {n_stats.mean - 2.0 * n_stats.se, n_stats.mean, n_stats.mean + 2.0 * n_stats.se})
            bound = std::min(bound, bound_at(en, t));
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(params.replicates));
        r.sigma = std::max(r.sigma, sigma);
        const double slack = p - bound - 3.0 * sigma;
        r.worst_slack = std::max(r.worst_slack, slack);
        if (slack > 0.0) ++r.violations;
        note(r, "t" + format17(factor) + "_p", p);
        note(r, "t" + format17(factor) + "_bound", bound);
    }
    finish(r);
    return r;
}

CheckReport check_bk_decomposition(const ProcessModel& model, const BkParams& params,
                                   std::uint64_t seed) {
    if (!(params.beta > 0.0) || params.beta >= 1.0)
        throw std::invalid_argument("check_bk_decomposition: beta must be in (0,1)");
    check_capacity(model, params.ell, params.beta);
    const double split_x = params.split_fraction * params.beta * params.ell;
    const double t = params.zeta * params.ell;
    const auto window = experiment_window(params.ell, params.beta, model.dim);
    const int cap = derived_solve_cap(model, params.ell, params.beta);

    auto half_config = [&](const PointConfiguration& config, bool left) {
        PointConfiguration half = config;
        half.atoms.clear();
        for (const Atom& a : config.atoms) {
            const bool is_left = a.position[0] <= split_x;
            if (is_left == left) half.atoms.push_back(a);
        }
        return half;
    };

    const auto g_values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config =
            sample_ppp(window, model.law, derive_seed(derive_seed(seed, 0), static_cast<std::uint64_t>(r)));
        const Point origin = zero_point(model.dim);
        const Point end = axis_point(model.dim, 0, params.beta * params.ell);
        return max_path_mass(config, SolveSpec::path_between(origin, end, params.ell), cap).value_lower;
    });
    const auto left_values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config =
            sample_ppp(window, model.law, derive_seed(derive_seed(seed, 1), static_cast<std::uint64_t>(r)));
        return max_free_path_mass(half_config(config, true), params.ell, Region::full(), cap).value_lower;
    });
    const auto right_values = run_replicates(params.replicates, model.workers, [&](long r) {
        const auto config =
            sample_ppp(window, model.law, derive_seed(derive_seed(seed, 2), static_cast<std::uint64_t>(r)));
        return max_free_path_mass(half_config(config, false), params.ell, Region::full(), cap).value_lower;
    });

    const long n = params.replicates;
    auto tail = [&](const std::vector<double>& values, double u) {
        long hits = 0;
        for (double v : values)
            if (v >= u) ++hits;
        return static_cast<double>(hits) / static_cast<double>(n);
    };

    long lhs_hits = 0;
    for (double v : g_values)
        if (v >= t) ++lhs_hits;
    const double p_lhs = static_cast<double>(lhs_hits) / static_cast<double>(n);
    const double sigma_lhs = std::sqrt(p_lhs * (1.0 - p_lhs) / static_cast<double>(n));

    const int t_ceil = static_cast<int>(std::ceil(std::max(0.0, t)));
    std::vector<double> p1(static_cast<std::size_t>(t_ceil) + 1), p2(static_cast<std::size_t>(t_ceil) + 1);
    for (int u = 0; u <= t_ceil; ++u) {
        p1[static_cast<std::size_t>(u)] = tail(left_values, u);
        p2[static_cast<std::size_t>(u)] = tail(right_values, u);
    }

    double rhs = 0.0;
    std::vector<double> w1(static_cast<std::size_t>(t_ceil) + 1, 0.0),
        w2(static_cast<std::size_t>(t_ceil) + 1, 0.0);
    for (int t1 = 0; t1 <= t_ceil; ++t1) {
        for (int t2 = 0; t2 <= t_ceil; ++t2) {
            const double s = t1 + t2;
            if (s < t - 2.0 || s > t) continue;
            rhs += p1[static_cast<std::size_t>(t1)] * p2[static_cast<std::size_t>(t2)];
            w1[static_cast<std::size_t>(t1)] += p2[static_cast<std::size_t>(t2)];
            w2[static_cast<std::size_t>(t2)] += p1[static_cast<std::size_t>(t1)];
        }
    }
    double sigma_rhs = 0.0;
    for (int u = 0; u <= t_ceil; ++u) {
        const double s1 = std::sqrt(p1[static_cast<std::size_t>(u)] *
                                    (1.0 - p1[static_cast<std::size_t>(u)]) / static_cast<double>(n));
        const double s2 = std::sqrt(p2[static_cast<std::size_t>(u)] *
                                    (1.0 - p2[static_cast<std::size_t>(u)]) / static_cast<double>(n));
        sigma_rhs += w1[static_cast<std::size_t>(u)] * s1 + w2[static_cast<std::size_t>(u)] * s2;
    }
    const double sigma = std::sqrt(sigma_lhs * sigma_lhs + sigma_rhs * sigma_rhs);

    CheckReport r;
    r.name = "bk_decomposition";
    r.instances = 1;
    r.sigma = sigma;
    const double slack = p_lhs - rhs - 3.0 * sigma;
    r.worst_slack = slack;
    if (slack > 0.0) r.violations = 1;
    note(r, "threshold", t);
    note(r, "p_lhs", p_lhs);
    note(r, "rhs", rhs);
    note(r, "replicates", static_cast<double>(n));
    finish(r);
    return r;
}

}  // namespace greedy
