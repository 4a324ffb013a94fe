#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <queue>
#include <set>

#include "greedy/oracle.hpp"
#include "greedy/pointprocess.hpp"
#include "greedy/solver.hpp"

using namespace greedy;

namespace {

Box box2(double lo0, double hi0, double lo1, double hi1) {
    Box b;
    b.lo = {lo0, lo1};
    b.hi = {hi0, hi1};
    return b;
}

const Point kOrigin{0.0, 0.0};

// Naive cross-check: enumerate all subsets of the radius-(n-1) sub-box that
// contain the origin, keep connected ones of the right cardinality.
double naive_lattice_animal(const LatticeField& field, int n) {
    std::vector<std::vector<int>> cells;
    const int r = n - 1;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            if (!(x == 0 && y == 0) && std::abs(x) + std::abs(y) <= r) cells.push_back({x, y});
    const int m = static_cast<int>(cells.size());
    REQUIRE(n - 1 <= 5);
    double best = -1.0;
    std::vector<int> pick(static_cast<std::size_t>(n - 1));
    std::function<void(int, int)> choose = [&](int from, int depth) {
        if (depth == n - 1) {
            std::vector<std::vector<int>> animal{{0, 0}};
            for (int i : pick) animal.push_back(cells[static_cast<std::size_t>(i)]);
            // BFS connectivity
            std::set<std::vector<int>> members(animal.begin(), animal.end());
            std::set<std::vector<int>> seen{{0, 0}};
            std::queue<std::vector<int>> q;
            q.push({0, 0});
            while (!q.empty()) {
                auto c = q.front();
                q.pop();
                for (std::size_t k = 0; k < 2; ++k)
                    for (int s : {-1, 1}) {
                        auto nb = c;
                        nb[k] += s;
                        if (members.count(nb) && !seen.count(nb)) {
                            seen.insert(nb);
                            q.push(nb);
                        }
                    }
            }
            if (seen.size() == members.size()) {
                double mass = 0.0;
                for (const auto& c : members) mass += field.mass_at(c);
                best = std::max(best, mass);
            }
            return;
        }
        for (int i = from; i < m; ++i) {
            pick[static_cast<std::size_t>(depth)] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    return best;
}

bool cells_connected(const std::vector<std::vector<int>>& cells) {
    if (cells.empty()) return false;
    std::set<std::vector<int>> members(cells.begin(), cells.end());
    std::set<std::vector<int>> seen{cells[0]};
    std::queue<std::vector<int>> q;
    q.push(cells[0]);
    while (!q.empty()) {
        auto c = q.front();
        q.pop();
        for (std::size_t k = 0; k < c.size(); ++k)
            for (int s : {-1, 1}) {
                auto nb = c;
                nb[k] += s;
                if (members.count(nb) && !seen.count(nb)) {
                    seen.insert(nb);
                    q.push(nb);
                }
            }
    }
    return seen.size() == members.size();
}

}  // namespace

TEST_CASE("brute force path trivial cases") {
    PointConfiguration config;
    config.dimension = 2;
    config.window = box2(-1, 1, -1, 1);
    config.law = MarkLaw::uniform(1.0, 1.0);
    CHECK(brute_force_path(config, SolveSpec::path_from(kOrigin, 2.0)) == 0.0);
    config.atoms = {{{0.5, 0.0}, 1.5}};
    CHECK(brute_force_path(config, SolveSpec::path_from(kOrigin, 2.0)) == 1.5);
    std::vector<Atom> many(13, Atom{{0.1, 0.1}, 1.0});
    config.atoms = many;
    CHECK_THROWS_AS(brute_force_path(config, SolveSpec::path_from(kOrigin, 2.0)), capacity_error);
}

TEST_CASE("brute force and held-karp agree on 500 seeds") {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 500; ++seed) {
        REQUIRE(seed < 2000);
        const auto config = sample_ppp(box2(-1.4, 1.4, -1.4, 1.4), MarkLaw::uniform(1.0, 1.0),
                                       derive_seed(42, seed));
        if (config.atoms.size() > 12) continue;
        ++checked;
        const auto spec = SolveSpec::path_from(kOrigin, 2.5);
        CHECK(brute_force_path(config, spec) == held_karp_path_oracle(config, spec).value_lower);
    }
}

TEST_CASE("lattice field indexing and sampling") {
    const auto field = sample_lattice_field(2, 3, MarkLaw::uniform(1.0, 1.0), 9);
    CHECK(field.masses.size() == 49);
    for (double m : field.masses) {
        CHECK(m > 0.0);
        CHECK(m <= 1.0);
    }
    CHECK(field.mass_at({0, 0}) == field.masses[field.index_of({0, 0})]);
    CHECK(field.in_box({3, -3}));
    CHECK_FALSE(field.in_box({4, 0}));
}

TEST_CASE("lattice greedy animal basics") {
    const auto field = sample_lattice_field(2, 4, MarkLaw::uniform(1.0, 1.0), 17);
    CHECK(lattice_greedy_animal(field, 1) == field.mass_at({0, 0}));
    const double two = lattice_greedy_animal(field, 2);
    double best_nb = 0.0;
    for (const auto& nb : {std::vector<int>{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
        best_nb = std::max(best_nb, field.mass_at(nb));
    CHECK(two == field.mass_at({0, 0}) + best_nb);
    CHECK_THROWS_AS(lattice_greedy_animal(field, 9), capacity_error);
    CHECK_THROWS_AS(lattice_greedy_animal(field, 6), capacity_error);  // box radius 4 < 5
}

TEST_CASE("lattice greedy animal matches naive enumeration at n = 5") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto field = sample_lattice_field(2, 5, MarkLaw::uniform(1.0, 1.0), derive_seed(7, seed));
        CHECK(lattice_greedy_animal(field, 5) ==
              doctest::Approx(naive_lattice_animal(field, 5)).epsilon(1e-14));
    }
}

TEST_CASE("cell masses split the configuration by unit cells") {
    PointConfiguration config;
    config.dimension = 2;
    config.window = box2(-2, 2, -2, 2);
    config.law = MarkLaw::uniform(1.0, 1.0);
    config.atoms = {{{0.5, 0.5}, 1.0}, {{0.25, 0.75}, 0.5}, {{-0.5, 0.5}, 2.0}, {{1.5, -1.5}, 0.25}};
    const auto xv = cell_masses(config);
    CHECK(xv.at({0, 0}) == 1.5);
    CHECK(xv.at({-1, 0}) == 2.0);
    CHECK(xv.at({1, -2}) == 0.25);
    CHECK(xv.size() == 3);
}

TEST_CASE("lattice cover dominates the witness and stays connected") {
    const auto empty_cover = lattice_cover(PointConfiguration{2, box2(-1, 1, -1, 1), {},
                                                              0, MarkLaw::uniform(1.0, 1.0)},
                                           {}, {}, 5.0);
    CHECK(empty_cover.cells == std::vector<std::vector<int>>{{0, 0}});
    CHECK(empty_cover.covered_mass == 0.0);

    for (double ell : {5.0, 10.0, 20.0}) {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto config = sample_ppp(experiment_window(ell, 0.0, 2),
                                           MarkLaw::uniform(1.0, 26.0 / (4.0 * ell * ell)),
                                           derive_seed(700 + static_cast<std::uint64_t>(ell), seed));
            SolveResult witness;
            try {
                witness = max_path_mass(config, SolveSpec::path_from(kOrigin, ell), 64);
            } catch (const capacity_error&) {
                continue;
            }
            std::vector<Point> verts;
            std::vector<std::pair<int, int>> edges;
            for (std::size_t i = 0; i < witness.witness_atoms.size(); ++i) {
                verts.push_back(config.atoms[static_cast<std::size_t>(witness.witness_atoms[i])].position);
                if (i + 1 < witness.witness_atoms.size())
                    edges.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1);
            }
            const auto cover = lattice_cover(config, verts, edges, ell);
            CHECK(cover.covered_mass >= witness.value_lower);
            CHECK(cover.witness_mass == witness.value_lower);
            CHECK(cells_connected(cover.cells));
            CHECK(std::count(cover.cells.begin(), cover.cells.end(), std::vector<int>{0, 0}) == 1);
            CHECK(cover.cells_per_length < 6.0);  // empirical covering constant stays bounded
        }
    }
}

TEST_CASE("single-cell witness covers within one cell hull") {
    PointConfiguration config;
    config.dimension = 2;
    config.window = box2(-1, 1, -1, 1);
    config.law = MarkLaw::uniform(1.0, 1.0);
    config.atoms = {{{0.25, 0.25}, 1.0}, {{0.75, 0.75}, 0.5}};
    const auto cover = lattice_cover(config, {{0.25, 0.25}, {0.75, 0.75}}, {{0, 1}}, 3.0);
    CHECK(cover.cells == std::vector<std::vector<int>>{{0, 0}});
    CHECK(cover.covered_mass == 1.5);
    CHECK(cover.witness_mass == 1.5);
}

TEST_CASE("clipped cell mass is dominated on single-atom cells") {
    // On cells holding exactly one atom, the residual mass after split at m
    // equals (X_v - m)^+ exactly.
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto config =
            sample_ppp(box2(0, 5, 0, 5), MarkLaw::pareto(1.6, 0.4, 0.4), derive_seed(31, seed));
        const double m = 1.0;
        const auto [low, high] = split_truncate(config, m);
        const auto full_cells = cell_masses(config);
        const auto high_cells = cell_masses(high);
        std::map<std::vector<int>, int> counts;
        for (const Atom& a : config.atoms) {
            std::vector<int> c{static_cast<int>(std::floor(a.position[0])),
                               static_cast<int>(std::floor(a.position[1]))};
            counts[c] += 1;
        }
        for (const auto& [cell, cnt] : counts) {
            if (cnt != 1) continue;
            const double xv = full_cells.at(cell);
            const auto it = high_cells.find(cell);
            const double resid = it == high_cells.end() ? 0.0 : it->second;
            CHECK(resid == std::max(0.0, xv - m));
        }
    }
}
