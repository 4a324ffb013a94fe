#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "greedy/geometry.hpp"
#include "greedy/pointprocess.hpp"

namespace greedy {

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Variant { path, animal };

struct SolveSpec {
    Variant variant = Variant::path;
    std::vector<Point> anchors;  // one (start) or two (start, end)
    double budget = 0.0;
    double penalty = 0.0;  // animals only; may be INFINITY
    Region region;         // default: full space

    static SolveSpec path_from(Point start, double budget);
    static SolveSpec path_between(Point start, Point end, double budget);
    static SolveSpec animal_from(Point anchor, double budget, double penalty = 0.0);
    static SolveSpec animal_between(Point a, Point b, double budget, double penalty = 0.0);
};

struct SolveResult {
    double value_lower = 0.0;
    double value_upper = 0.0;  // equal to value_lower when exact
    std::vector<int> witness_atoms;                // original atom indices; visit order for paths
    std::vector<std::pair<int, int>> witness_edges;  // tree edges for animals (original indices)
    double length_used = 0.0;
    long nodes_explored = 0;
    bool exact = true;
};

// Default atom cap for exact solves, overridable via GREEDY_FIELDS_CAP.
int solver_atom_cap();
inline constexpr int kDefaultAtomCap = 26;

// Exact maximal path mass by branch and bound with admissible pruning.
// Atoms are filtered by spec.region; the witness is the lexicographically
// smallest optimal visit sequence. cap = 0 means solver_atom_cap().
SolveResult max_path_mass(const PointConfiguration& config, const SolveSpec& spec, int cap = 0);

// Two-anchor path optimum over atoms inside the diamond with aperture delta.
SolveResult max_diamond_path_mass(const PointConfiguration& config, double delta, const Point& x,
                                  const Point& y, double budget, int cap = 0);

// Free path: no anchors, the first vertex may be any atom. Used by the
// disjoint-occurrence check, which needs unanchored half-window pieces.
SolveResult max_free_path_mass(const PointConfiguration& config, double budget,
                               const Region& region = Region::full(), int cap = 0);

// Certified bracket for the greedy animal mass:
//   lower = max(path optimum at ell, best mass with mst(S) + anchor links <= ell)
//   upper = min(path optimum at 2*ell, best mass with mst(S + anchors) <= 2*ell)
// The second upper bound is valid because a minimal Steiner tree is at least
// half a minimum spanning tree. The same bracket encloses A^(q) for every q.
SolveResult max_animal_mass_bracket(const PointConfiguration& config, const SolveSpec& spec,
                                    int cap = 0);

// Independent exact path optimum by subset dynamic programming over
// (subset, last atom) states. Oracle for acceptance tests; cap <= 20.
SolveResult held_karp_path_oracle(const PointConfiguration& config, const SolveSpec& spec,
                                  int cap = kTourHardCap);

// Lower end of the animal bracket alone; estimators use this as the
// conservative A-value without paying for the upper-end solves.
double animal_lower_value(const PointConfiguration& config, const SolveSpec& spec, int cap = 0);

}  // namespace greedy
