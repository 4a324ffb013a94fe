#include "greedy/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace greedy {

SolveSpec SolveSpec::path_from(Point start, double budget) {
    SolveSpec s;
    s.variant = Variant::path;
    s.anchors = {std::move(start)};
    s.budget = budget;
    return s;
}

SolveSpec SolveSpec::path_between(Point start, Point end, double budget) {
    SolveSpec s;
    s.variant = Variant::path;
    s.anchors = {std::move(start), std::move(end)};
    s.budget = budget;
    return s;
}

SolveSpec SolveSpec::animal_from(Point anchor, double budget, double penalty) {
    SolveSpec s;
    s.variant = Variant::animal;
    s.anchors = {std::move(anchor)};
    s.budget = budget;
    s.penalty = penalty;
    return s;
}

SolveSpec SolveSpec::animal_between(Point a, Point b, double budget, double penalty) {
    SolveSpec s;
    s.variant = Variant::animal;
    s.anchors = {std::move(a), std::move(b)};
    s.budget = budget;
    s.penalty = penalty;
    return s;
}

int solver_atom_cap() {
    if (const char* env = std::getenv("GREEDY_FIELDS_CAP")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return kDefaultAtomCap;
}

namespace {

enum class AnchorMode { free_start, one, two };

struct PathProblem {
    AnchorMode mode = AnchorMode::one;
    int n = 0;
    double budget = 0.0;
    double anchor_span = 0.0;         // d(start, end) for two anchors
    std::vector<int> idx;             // original atom indices, ascending
    std::vector<double> marks;
    std::vector<double> dm;           // n x n distances
    std::vector<double> start_d;      // start anchor -> atom (0 in free mode)
    std::vector<double> end_d;        // atom -> end anchor (0 otherwise)

    double d(int i, int j) const { return dm[static_cast<std::size_t>(i) * n + j]; }
};

void validate_spec(const SolveSpec& spec, AnchorMode* mode) {
    if (spec.anchors.empty() || spec.anchors.size() > 2)
        throw std::invalid_argument("solve: expected one or two anchors");
    if (!(spec.budget >= 0.0)) throw std::invalid_argument("solve: negative budget");
    if (spec.penalty < 0.0 && !std::isinf(spec.penalty))
        throw std::invalid_argument("solve: negative penalty");
    *mode = spec.anchors.size() == 2 ? AnchorMode::two : AnchorMode::one;
    if (*mode == AnchorMode::two) {
        const double span = dist(spec.anchors[0], spec.anchors[1]);
        if (span > spec.budget)
            throw infeasible_error("solve: anchor distance exceeds budget");
        if ((spec.region.kind == RegionKind::diamond || spec.region.kind == RegionKind::slab) &&
            (spec.region.anchor_a != spec.anchors[0] || spec.region.anchor_b != spec.anchors[1]))
            throw std::invalid_argument("solve: diamond region anchors differ from the solve anchors");
    }
}

PathProblem prepare_path(const PointConfiguration& config, const std::vector<Point>& anchors,
                         AnchorMode mode, double budget, const Region& region, int cap) {
    PathProblem p;
    p.mode = mode;
    p.budget = budget;
    if (mode == AnchorMode::two) p.anchor_span = dist(anchors[0], anchors[1]);

    for (int i = 0; i < static_cast<int>(config.atoms.size()); ++i) {
        const Atom& a = config.atoms[static_cast<std::size_t>(i)];
        if (!region.contains(a.position)) continue;
        double sd = 0.0, ed = 0.0;
        if (mode != AnchorMode::free_start) sd = dist(anchors[0], a.position);
        if (mode == AnchorMode::two) ed = dist(a.position, anchors[1]);
        if (sd + ed > budget) continue;  // unreachable under any route
        p.idx.push_back(i);
        p.marks.push_back(a.mark);
        p.start_d.push_back(sd);
        p.end_d.push_back(ed);
    }
    p.n = static_cast<int>(p.idx.size());
    const int limit = cap > 0 ? cap : solver_atom_cap();
    if (p.n > limit)
        throw capacity_error("solve: " + std::to_string(p.n) + " atoms after filtering exceeds cap " +
                             std::to_string(limit));
    p.dm.assign(static_cast<std::size_t>(p.n) * p.n, 0.0);
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
            const double w = dist(config.atoms[static_cast<std::size_t>(p.idx[i])].position,
                                  config.atoms[static_cast<std::size_t>(p.idx[j])].position);
            p.dm[static_cast<std::size_t>(i) * p.n + j] = w;
            p.dm[static_cast<std::size_t>(j) * p.n + i] = w;
        }
    return p;
}

double canonical_mass(const PathProblem& p, std::vector<int> local) {
    std::sort(local.begin(), local.end());
    double s = 0.0;
    for (int i : local) s += p.marks[static_cast<std::size_t>(i)];
    return s;
}

struct PathSearch {
    const PathProblem& p;
    double best_mass = 0.0;
    std::vector<int> best_seq;
    double best_len = 0.0;
    long nodes = 0;
    std::vector<int> seq;
    std::vector<char> used;

    explicit PathSearch(const PathProblem& problem) : p(problem), used(problem.n, 0) {}

    // Admissible bound: mass collected so far plus every unused atom still
    // individually reachable within the remaining budget.
    double bound_from(int j, double len, double mass) const {
        double b = mass;
        for (int k = 0; k < p.n; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            if (len + p.d(j, k) + p.end_d[static_cast<std::size_t>(k)] <= p.budget)
                b += p.marks[static_cast<std::size_t>(k)];
        }
        return b;
    }

    // Children explored nearest-first (index as tie-break) so deep feasible
    // incumbents appear early; the incumbent updates only on strictly larger
    // mass, which keeps the result independent of exploration details.
    void dfs(int last, double len, double mass) {
        ++nodes;
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(p.n));
        for (int j = 0; j < p.n; ++j)
            if (!used[static_cast<std::size_t>(j)]) order.push_back(j);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = last < 0 ? p.start_d[static_cast<std::size_t>(a)] : p.d(last, a);
            const double db = last < 0 ? p.start_d[static_cast<std::size_t>(b)] : p.d(last, b);
            if (da != db) return da < db;
            return a < b;
        });
        for (int j : order) {
            const double step = last < 0 ? p.start_d[static_cast<std::size_t>(j)] : p.d(last, j);
            const double new_len = len + step;
            if (new_len + p.end_d[static_cast<std::size_t>(j)] > p.budget) continue;
            const double new_mass = mass + p.marks[static_cast<std::size_t>(j)];
            seq.push_back(j);
            used[static_cast<std::size_t>(j)] = 1;
            if (new_mass > best_mass) {
                best_mass = new_mass;
                best_seq = seq;
                best_len = new_len + p.end_d[static_cast<std::size_t>(j)];
            }
            if (bound_from(j, new_len, new_mass) > best_mass) dfs(j, new_len, new_mass);
            used[static_cast<std::size_t>(j)] = 0;
            seq.pop_back();
        }
    }
};

SolveResult run_path_bnb(const PathProblem& p) {
    PathSearch search(p);
    search.best_len = p.mode == AnchorMode::two ? p.anchor_span : 0.0;
    search.dfs(-1, 0.0, 0.0);

    SolveResult r;
    r.value_lower = r.value_upper = canonical_mass(p, search.best_seq);
    r.exact = true;
    r.length_used = search.best_len;
    r.nodes_explored = search.nodes;
    r.witness_atoms.reserve(search.best_seq.size());
    for (int j : search.best_seq) r.witness_atoms.push_back(p.idx[static_cast<std::size_t>(j)]);
    for (std::size_t i = 0; i + 1 < r.witness_atoms.size(); ++i)
        r.witness_edges.emplace_back(r.witness_atoms[i], r.witness_atoms[i + 1]);
    return r;
}

}  // namespace

SolveResult max_path_mass(const PointConfiguration& config, const SolveSpec& spec, int cap) {
    if (spec.variant != Variant::path) throw std::invalid_argument("max_path_mass: variant must be path");
    AnchorMode mode;
    validate_spec(spec, &mode);
    const PathProblem p = prepare_path(config, spec.anchors, mode, spec.budget, spec.region, cap);
    return run_path_bnb(p);
}

SolveResult max_diamond_path_mass(const PointConfiguration& config, double delta, const Point& x,
                                  const Point& y, double budget, int cap) {
    SolveSpec spec = SolveSpec::path_between(x, y, budget);
    spec.region = Region::diamond(delta, x, y);
    return max_path_mass(config, spec, cap);
}

SolveResult max_free_path_mass(const PointConfiguration& config, double budget,
                               const Region& region, int cap) {
    if (!(budget >= 0.0)) throw std::invalid_argument("solve: negative budget");
    PathProblem p = prepare_path(config, {}, AnchorMode::free_start, budget, region, cap);
    return run_path_bnb(p);
}

SolveResult held_karp_path_oracle(const PointConfiguration& config, const SolveSpec& spec, int cap) {
    if (spec.variant != Variant::path)
        throw std::invalid_argument("held_karp_path_oracle: variant must be path");
    AnchorMode mode;
    validate_spec(spec, &mode);
    const PathProblem p = prepare_path(config, spec.anchors, mode, spec.budget, spec.region,
                                       cap > 0 ? cap : kTourHardCap);
    const int n = p.n;

    SolveResult r;
    r.exact = true;
    r.length_used = mode == AnchorMode::two ? p.anchor_span : 0.0;
    if (n == 0) return r;

    const std::uint32_t full = (1u << n) - 1u;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(static_cast<std::size_t>(full + 1) * n, inf);
    auto at = [&](std::uint32_t mask, int j) -> double& {
        return dp[static_cast<std::size_t>(mask) * n + j];
    };
    for (int j = 0; j < n; ++j) at(1u << j, j) = p.start_d[static_cast<std::size_t>(j)];
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const double base = at(mask, j);
            if (!std::isfinite(base)) continue;
            if (base > p.budget) continue;
            for (int k = 0; k < n; ++k) {
                if (mask & (1u << k)) continue;
                const double cand = base + p.d(j, k);
                double& slot = at(mask | (1u << k), k);
                if (cand < slot) slot = cand;
            }
        }
    }

    double best_mass = 0.0;
    std::uint32_t best_mask = 0;
    int best_last = -1;
    double best_len = r.length_used;
    std::vector<double> mask_mass(full + 1, 0.0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int low = std::countr_zero(mask);
        mask_mass[mask] = mask_mass[mask & (mask - 1u)] + p.marks[static_cast<std::size_t>(low)];
    }
    // mask_mass sums marks from the lowest set bit up: index order, canonical.
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (mask_mass[mask] <= best_mass) continue;
        double len = inf;
        int last = -1;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const double total = at(mask, j) + p.end_d[static_cast<std::size_t>(j)];
            if (total < len) {
                len = total;
                last = j;
            }
        }
        if (len <= p.budget) {
            best_mass = mask_mass[mask];
            best_mask = mask;
            best_last = last;
            best_len = len;
        }
    }

    r.value_lower = r.value_upper = best_mass;
    r.length_used = best_len;
    r.nodes_explored = static_cast<long>(full) + 1;
    if (best_mask != 0) {
        // Reconstruct one optimal visit order by walking the DP backwards.
        std::vector<int> order;
        std::uint32_t mask = best_mask;
        int j = best_last;
        while (mask != 0) {
            order.push_back(j);
            const std::uint32_t prev_mask = mask & ~(1u << j);
            if (prev_mask == 0) break;
            int best_k = -1;
            for (int k = 0; k < n; ++k) {
                if (!(prev_mask & (1u << k))) continue;
                if (std::isfinite(at(prev_mask, k)) &&
                    std::abs(at(prev_mask, k) + p.d(k, j) - at(mask, j)) <= 1e-12 * (1.0 + at(mask, j))) {
                    best_k = k;
                    break;
                }
            }
            if (best_k < 0) {
                // fall back: pick any member with finite state
                for (int k = 0; k < n; ++k)
                    if ((prev_mask & (1u << k)) && std::isfinite(at(prev_mask, k))) {
                        best_k = k;
                        break;
                    }
            }
            mask = prev_mask;
            j = best_k;
        }
        std::reverse(order.begin(), order.end());
        for (int v : order) r.witness_atoms.push_back(p.idx[static_cast<std::size_t>(v)]);
        for (std::size_t i = 0; i + 1 < r.witness_atoms.size(); ++i)
            r.witness_edges.emplace_back(r.witness_atoms[i], r.witness_atoms[i + 1]);
    }
    return r;
}

namespace {

// Max mass over atom subsets S under one of two tree-cost feasibility rules:
//   anchored: mst(S) + sum over anchors of d(anchor, S) <= budget
//   joined:   mst(S union anchors) <= budget
struct AnimalProblem {
    int n = 0;
    double budget = 0.0;
    bool joined = false;
    std::vector<int> idx;
    std::vector<double> marks;
    std::vector<double> suffix_mass;
    std::vector<Point> pts;
    std::vector<Point> anchors;
};

struct AnimalSearch {
    const AnimalProblem& p;
    double best_mass = 0.0;
    std::vector<int> best_subset;
    double best_cost = 0.0;
    long nodes = 0;
    std::vector<int> chosen;
    std::vector<Point> active;  // chosen points (+ anchors in joined mode)

    explicit AnimalSearch(const AnimalProblem& problem) : p(problem) {
        if (p.joined) active = p.anchors;
    }

    double exact_cost() const {
        if (p.joined) return mst_length(active);
        if (chosen.empty()) return 0.0;
        double cost = mst_length(active);
        for (const Point& a : p.anchors) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const Point& q : active) dmin = std::min(dmin, dist(a, q));
            cost += dmin;
        }
        return cost;
    }

    void consider_current() {
        const double cost = exact_cost();
        if (cost > p.budget) return;
        double mass = 0.0;
        for (int j : chosen) mass += p.marks[static_cast<std::size_t>(j)];
        if (mass > best_mass) {
            best_mass = mass;
            best_subset = chosen;
            best_cost = cost;
        }
    }

    // Any tree spanning S and a candidate k is at least d(k, x) long for every
    // x in S, so candidates farther than the budget from a chosen point can
    // never join a feasible superset.
    bool compatible(int k) const {
        for (const Point& q : active)
            if (dist(q, p.pts[static_cast<std::size_t>(k)]) > p.budget) return false;
        return true;
    }

    void dfs(int from, double mass) {
        ++nodes;
        double tail_mass = 0.0;
        for (int k = p.n - 1; k >= from; --k) {
            // suffix of masses restricted to candidates still compatible with S
            if (compatible(k)) tail_mass += p.marks[static_cast<std::size_t>(k)];
        }
        for (int j = from; j < p.n; ++j) {
            if (mass + tail_mass <= best_mass) break;
            if (compatible(j)) tail_mass -= p.marks[static_cast<std::size_t>(j)];
            active.push_back(p.pts[static_cast<std::size_t>(j)]);
            // No feasible superset exists once mst(S)/2 exceeds the budget:
            // a Steiner tree of a superset is at least mst(S)/2 long.
            const double tree = mst_length(active);
            if (tree * 0.5 <= p.budget) {
                chosen.push_back(j);
                consider_current();
                dfs(j + 1, mass + p.marks[static_cast<std::size_t>(j)]);
                chosen.pop_back();
            }
            active.pop_back();
        }
    }
};

AnimalProblem prepare_animal(const PointConfiguration& config, const std::vector<Point>& anchors,
                             double budget, bool joined, const Region& region, int cap) {
    AnimalProblem p;
    p.budget = budget;
    p.joined = joined;
    p.anchors = anchors;
    for (int i = 0; i < static_cast<int>(config.atoms.size()); ++i) {
        const Atom& a = config.atoms[static_cast<std::size_t>(i)];
        if (!region.contains(a.position)) continue;
        // Any feasible tree containing the atom together with the anchor
        // links is at least as long as the straight anchor-atom distance.
        bool reachable = true;
        for (const Point& anchor : anchors)
            if (dist(anchor, a.position) > budget) reachable = false;
        if (!reachable) continue;
        p.idx.push_back(i);
        p.marks.push_back(a.mark);
        p.pts.push_back(a.position);
    }
    p.n = static_cast<int>(p.idx.size());
    const int limit = cap > 0 ? cap : solver_atom_cap();
    if (p.n > limit)
        throw capacity_error("animal solve: " + std::to_string(p.n) +
                             " atoms after filtering exceeds cap " + std::to_string(limit));
    p.suffix_mass.assign(static_cast<std::size_t>(p.n) + 1, 0.0);
    for (int j = p.n - 1; j >= 0; --j)
        p.suffix_mass[static_cast<std::size_t>(j)] =
            p.suffix_mass[static_cast<std::size_t>(j) + 1] + p.marks[static_cast<std::size_t>(j)];
    return p;
}

struct AnimalOpt {
    double value = 0.0;
    std::vector<int> atoms;  // original indices, ascending
    double cost = 0.0;
    long nodes = 0;
};

double canonical_mass_of(const AnimalProblem& p, std::vector<int> local) {
    std::sort(local.begin(), local.end());
    double s = 0.0;
    for (int i : local) s += p.marks[static_cast<std::size_t>(i)];
    return s;
}

AnimalOpt animal_subset_opt(const PointConfiguration& config, const std::vector<Point>& anchors,
                            double budget, bool joined, const Region& region, int cap) {
    const AnimalProblem p = prepare_animal(config, anchors, budget, joined, region, cap);
    AnimalSearch search(p);
    search.dfs(0, 0.0);
    AnimalOpt out;
    out.value = canonical_mass_of(p, search.best_subset);
    out.nodes = search.nodes;
    out.cost = search.best_cost;
    for (int j : search.best_subset) out.atoms.push_back(p.idx[static_cast<std::size_t>(j)]);
    return out;
}

}  // namespace

double animal_lower_value(const PointConfiguration& config, const SolveSpec& spec, int cap) {
    if (spec.variant != Variant::animal)
        throw std::invalid_argument("animal_lower_value: variant must be animal");
    AnchorMode mode;
    validate_spec(spec, &mode);
    SolveSpec path_spec = spec;
    path_spec.variant = Variant::path;
    const double path_value = max_path_mass(config, path_spec, cap).value_lower;
    const double mst_value =
        animal_subset_opt(config, spec.anchors, spec.budget, false, spec.region, cap).value;
    return std::max(path_value, mst_value);
}

SolveResult max_animal_mass_bracket(const PointConfiguration& config, const SolveSpec& spec, int cap) {
    if (spec.variant != Variant::animal)
        throw std::invalid_argument("max_animal_mass_bracket: variant must be animal");
    AnchorMode mode;
    validate_spec(spec, &mode);
    const double ell = spec.budget;

    SolveSpec path_spec = spec;
    path_spec.variant = Variant::path;
    const SolveResult path_l = max_path_mass(config, path_spec, cap);
    path_spec.budget = 2.0 * ell;
    const SolveResult path_2l = max_path_mass(config, path_spec, cap);

    const AnimalOpt low = animal_subset_opt(config, spec.anchors, ell, false, spec.region, cap);
    const AnimalOpt up = animal_subset_opt(config, spec.anchors, 2.0 * ell, true, spec.region, cap);

    SolveResult r;
    r.value_lower = std::max(path_l.value_lower, low.value);
    r.value_upper = std::min(path_2l.value_upper, up.value);
    r.exact = r.value_lower == r.value_upper;
    r.nodes_explored = path_l.nodes_explored + path_2l.nodes_explored + low.nodes + up.nodes;
    if (r.value_lower > r.value_upper)
        throw std::logic_error("animal bracket inverted; this indicates a solver bug");

    if (low.value >= path_l.value_lower) {
        r.witness_atoms = low.atoms;
        std::vector<Point> pts;
        pts.reserve(low.atoms.size());
        for (int i : low.atoms) pts.push_back(config.atoms[static_cast<std::size_t>(i)].position);
        for (const auto& [a, b] : mst_edges(pts))
            r.witness_edges.emplace_back(low.atoms[static_cast<std::size_t>(a)],
                                         low.atoms[static_cast<std::size_t>(b)]);
        r.length_used = low.cost;
    } else {
        r.witness_atoms = path_l.witness_atoms;
        r.witness_edges = path_l.witness_edges;
        r.length_used = path_l.length_used;
    }
    return r;
}

}  // namespace greedy
