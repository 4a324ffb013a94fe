#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

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

PointConfiguration small_config(std::uint64_t seed, double half = 1.4) {
    return sample_ppp(box2(-half, half, -half, half), MarkLaw::uniform(1.0, 1.0), seed);
}

PointConfiguration empty_config() {
    PointConfiguration c;
    c.dimension = 2;
    c.window = box2(-1, 1, -1, 1);
    c.law = MarkLaw::uniform(1.0, 1.0);
    return c;
}

const Point kOrigin{0.0, 0.0};

// Exact animal lower optimum by full subset enumeration; test-side oracle for
// the bracket's lower end.
double brute_force_animal_lower(const PointConfiguration& config, const std::vector<Point>& anchors,
                                double budget) {
    const int n = static_cast<int>(config.atoms.size());
    REQUIRE(n <= 14);
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double mass = 0.0;
        std::vector<Point> pts;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) {
                mass += config.atoms[static_cast<std::size_t>(j)].mark;
                pts.push_back(config.atoms[static_cast<std::size_t>(j)].position);
            }
        double cost = mst_length(pts);
        for (const Point& a : anchors) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const Point& p : pts) dmin = std::min(dmin, dist(a, p));
            cost += dmin;
        }
        if (cost <= budget) best = std::max(best, mass);
    }
    return best;
}

}  // namespace

TEST_CASE("empty configuration solves to zero") {
    const auto config = empty_config();
    const auto one = max_path_mass(config, SolveSpec::path_from(kOrigin, 5.0));
    CHECK(one.value_lower == 0.0);
    CHECK(one.exact);
    CHECK(one.witness_atoms.empty());
    const auto two = max_path_mass(config, SolveSpec::path_between(kOrigin, Point{1.0, 0.0}, 5.0));
    CHECK(two.value_lower == 0.0);
    CHECK(two.length_used == 1.0);
}

TEST_CASE("single reachable atom is collected") {
    auto config = empty_config();
    config.atoms = {{{0.5, 0.0}, 2.0}};
    const auto r = max_path_mass(config, SolveSpec::path_from(kOrigin, 1.0));
    CHECK(r.value_lower == 2.0);
    CHECK(r.witness_atoms == std::vector<int>{0});
    CHECK(r.length_used == 0.5);

    auto far = empty_config();
    far.atoms = {{{3.0, 0.0}, 2.0}};
    CHECK(max_path_mass(far, SolveSpec::path_from(kOrigin, 1.0)).value_lower == 0.0);
}

TEST_CASE("two anchors farther than the budget are infeasible") {
    const auto config = empty_config();
    CHECK_THROWS_AS(max_path_mass(config, SolveSpec::path_between(kOrigin, Point{4.0, 0.0}, 3.0)),
                    infeasible_error);
}

TEST_CASE("capacity errors carry the cap") {
    const auto config = sample_ppp(box2(-4, 4, -4, 4), MarkLaw::uniform(1.0, 1.0), 5);
    REQUIRE(config.atoms.size() > 30);
    CHECK_THROWS_AS(max_path_mass(config, SolveSpec::path_from(kOrigin, 3.0), 10), capacity_error);
    CHECK(max_path_mass(config, SolveSpec::path_from(kOrigin, 2.0), 200).value_lower > 0.0);
}

TEST_CASE("branch and bound equals brute force on seeded configs") {
    int nontrivial = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto config = small_config(derive_seed(1000, seed));
        if (config.atoms.size() > 10) continue;
        const auto spec = SolveSpec::path_from(kOrigin, 3.0);
        const auto bnb = max_path_mass(config, spec);
        const double brute = brute_force_path(config, spec);
        CHECK(bnb.value_lower == brute);  // bitwise
        if (brute > 0.0) ++nontrivial;
    }
    CHECK(nontrivial > 100);
}

TEST_CASE("held-karp oracle agrees bitwise with branch and bound") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const auto config = small_config(derive_seed(2000, seed));
        if (config.atoms.size() > 12) continue;
        for (const auto& spec :
             {SolveSpec::path_from(kOrigin, 2.5), SolveSpec::path_between(kOrigin, Point{0.9, 0.0}, 2.5)}) {
            const auto bnb = max_path_mass(config, spec);
            const auto hk = held_karp_path_oracle(config, spec);
            CHECK(bnb.value_lower == hk.value_lower);
            CHECK(hk.exact);
        }
    }
}

TEST_CASE("held-karp trivial cases") {
    const auto config = empty_config();
    CHECK(held_karp_path_oracle(config, SolveSpec::path_from(kOrigin, 2.0)).value_lower == 0.0);
    auto far = empty_config();
    far.atoms = {{{5.0, 5.0}, 1.0}, {{-5.0, 5.0}, 1.0}};
    CHECK(held_karp_path_oracle(far, SolveSpec::path_from(kOrigin, 2.0)).value_lower == 0.0);
}

TEST_CASE("budget monotonicity") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto config = small_config(derive_seed(3000, seed));
        if (config.atoms.size() > 14) continue;
        double prev = -1.0;
        for (double ell : {0.5, 1.0, 2.0, 3.0, 4.5}) {
            const double v = max_path_mass(config, SolveSpec::path_from(kOrigin, ell)).value_lower;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("self-bounding: per-atom decrements within the mark, summing below the value") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto config = small_config(derive_seed(4000, seed));
        if (config.atoms.size() > 11) continue;
        const auto spec = SolveSpec::path_from(kOrigin, 2.5);
        const double value = max_path_mass(config, spec).value_lower;
        double decrement_sum = 0.0;
        for (std::size_t drop = 0; drop < config.atoms.size(); ++drop) {
            PointConfiguration reduced = config;
            reduced.atoms.erase(reduced.atoms.begin() + static_cast<std::ptrdiff_t>(drop));
            const double without = max_path_mass(reduced, spec).value_lower;
            CHECK(without <= value);
            CHECK(value - without <= config.atoms[drop].mark);
            decrement_sum += value - without;
        }
        CHECK(decrement_sum <= value);
    }
}

TEST_CASE("diamond solve filters atoms and matches slab at delta 1") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto config = small_config(derive_seed(5000, seed));
        if (config.atoms.size() > 12) continue;
        const Point end{0.9, 0.0};
        const auto dia = max_diamond_path_mass(config, 1.0, kOrigin, end, 2.5);

        SolveSpec slab_spec = SolveSpec::path_between(kOrigin, end, 2.5);
        slab_spec.region = Region::slab(kOrigin, end);
        const auto slab = max_path_mass(config, slab_spec);
        CHECK(dia.value_lower == slab.value_lower);

        SolveSpec dia_spec = SolveSpec::path_between(kOrigin, end, 2.5);
        dia_spec.region = Region::diamond(0.5, kOrigin, end);
        CHECK(max_diamond_path_mass(config, 0.5, kOrigin, end, 2.5).value_lower ==
              brute_force_path(config, dia_spec));
    }
}

TEST_CASE("no atoms in the diamond leaves the direct segment") {
    auto config = empty_config();
    config.atoms = {{{-0.9, -0.9}, 5.0}};  // outside the diamond
    const Point end{0.5, 0.0};
    const auto r = max_diamond_path_mass(config, 0.3, kOrigin, end, 2.0);
    CHECK(r.value_lower == 0.0);
    CHECK(r.witness_atoms.empty());
    CHECK(r.length_used == 0.5);
}

TEST_CASE("region monotonicity in the aperture") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto config = small_config(derive_seed(6000, seed));
        if (config.atoms.size() > 12) continue;
        const Point end{0.8, 0.0};
        const double v_small = max_diamond_path_mass(config, 0.25, kOrigin, end, 2.5).value_lower;
        const double v_mid = max_diamond_path_mass(config, 0.6, kOrigin, end, 2.5).value_lower;
        const double v_one = max_diamond_path_mass(config, 1.0, kOrigin, end, 2.5).value_lower;
        const double v_free = max_path_mass(config, SolveSpec::path_between(kOrigin, end, 2.5)).value_lower;
        CHECK(v_small <= v_mid);
        CHECK(v_mid <= v_one);
        CHECK(v_one <= v_free);
    }
}

TEST_CASE("animal bracket on the empty configuration") {
    const auto r = max_animal_mass_bracket(empty_config(), SolveSpec::animal_from(kOrigin, 3.0));
    CHECK(r.value_lower == 0.0);
    CHECK(r.value_upper == 0.0);
    CHECK(r.exact);
}

TEST_CASE("gross-bound chain holds exactly on every config") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const auto config = small_config(derive_seed(7000, seed));
        if (config.atoms.size() > 11) continue;
        const double ell = 2.0;
        const double p_l = max_path_mass(config, SolveSpec::path_from(kOrigin, ell)).value_lower;
        const double p_2l = max_path_mass(config, SolveSpec::path_from(kOrigin, 2 * ell)).value_lower;
        const auto a = max_animal_mass_bracket(config, SolveSpec::animal_from(kOrigin, ell));
        CHECK(p_l <= a.value_lower);
        CHECK(a.value_lower <= a.value_upper);
        CHECK(a.value_upper <= p_2l);
    }
}

TEST_CASE("animal bracket lower equals subset brute force") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const auto config = small_config(derive_seed(8000, seed));
        if (config.atoms.size() > 10) continue;
        const double ell = 2.0;
        const auto a = max_animal_mass_bracket(config, SolveSpec::animal_from(kOrigin, ell));
        const double brute_mst = brute_force_animal_lower(config, {kOrigin}, ell);
        const double p_l = max_path_mass(config, SolveSpec::path_from(kOrigin, ell)).value_lower;
        CHECK(a.value_lower == std::max(brute_mst, p_l));
        CHECK(a.length_used <= ell);  // the witness realizes the lower end
        double witness_mass = 0.0;
        for (int i : a.witness_atoms) witness_mass += config.atoms[static_cast<std::size_t>(i)].mark;
        if (!a.witness_atoms.empty()) CHECK(witness_mass == a.value_lower);
    }
}

TEST_CASE("two-anchor animal bracket") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto config = small_config(derive_seed(9000, seed));
        if (config.atoms.size() > 10) continue;
        const Point end{0.8, 0.0};
        const double ell = 2.0;
        const auto a = max_animal_mass_bracket(config, SolveSpec::animal_between(kOrigin, end, ell));
        const double brute_mst = brute_force_animal_lower(config, {kOrigin, end}, ell);
        const double p_l =
            max_path_mass(config, SolveSpec::path_between(kOrigin, end, ell)).value_lower;
        CHECK(a.value_lower == std::max(brute_mst, p_l));
        CHECK(a.value_lower <= a.value_upper);
    }
}

TEST_CASE("witness invariants and determinism") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto config = small_config(derive_seed(10000, seed));
        if (config.atoms.size() > 12) continue;
        const auto spec = SolveSpec::path_from(kOrigin, 2.5);
        const auto a = max_path_mass(config, spec);
        const auto b = max_path_mass(config, spec);
        CHECK(a.witness_atoms == b.witness_atoms);
        CHECK(a.value_lower == b.value_lower);
        CHECK(a.length_used <= spec.budget);
        double witness_mass = 0.0;
        for (int i : a.witness_atoms) witness_mass += config.atoms[static_cast<std::size_t>(i)].mark;
        CHECK(witness_mass == a.value_lower);
        // replay the witness: its length must be within budget
        if (!a.witness_atoms.empty()) {
            std::vector<Point> walk{kOrigin};
            for (int i : a.witness_atoms) walk.push_back(config.atoms[static_cast<std::size_t>(i)].position);
            CHECK(path_length(walk) <= spec.budget + 1e-12);
        }
    }
}

TEST_CASE("deleting an atom never increases the optimum") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto config = small_config(derive_seed(11000, seed));
        if (config.atoms.size() > 12 || config.atoms.empty()) continue;
        const auto spec = SolveSpec::path_from(kOrigin, 2.5);
        const double with_all = max_path_mass(config, spec).value_lower;
        config.atoms.pop_back();
        CHECK(max_path_mass(config, spec).value_lower <= with_all);
    }
}

TEST_CASE("penalty only tightens the animal bracket identity") {
    // The bracket never uses off-support vertices, so it is valid for every q
    // and the A^(inf) <= A^(q) <= A^(0) chain collapses to equality here.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto config = small_config(derive_seed(12000, seed));
        if (config.atoms.size() > 10) continue;
        const double ell = 2.0;
        SolveResult brackets[3];
        const double qs[3] = {0.0, 0.5, std::numeric_limits<double>::infinity()};
        for (int i = 0; i < 3; ++i)
            brackets[i] = max_animal_mass_bracket(config, SolveSpec::animal_from(kOrigin, ell, qs[i]));
        for (int i = 0; i + 1 < 3; ++i) {
            CHECK(brackets[i + 1].value_lower <= brackets[i].value_lower);
            CHECK(brackets[i + 1].value_upper <= brackets[i].value_upper);
        }
        CHECK(brackets[0].value_lower == brackets[2].value_lower);
    }
}

TEST_CASE("three-dimensional solves work end to end") {
    Box box;
    box.lo = {-1.2, -1.2, -1.2};
    box.hi = {1.2, 1.2, 1.2};
    const auto config = sample_ppp(box, MarkLaw::uniform(1.0, 1.2), 321);
    REQUIRE(config.dimension == 3);
    const Point origin{0.0, 0.0, 0.0};
    const auto spec = SolveSpec::path_from(origin, 2.0);
    const auto r = max_path_mass(config, spec, 64);
    CHECK(r.value_lower == held_karp_path_oracle(config, spec).value_lower);
    const auto a = max_animal_mass_bracket(config, SolveSpec::animal_from(origin, 1.5), 64);
    CHECK(a.value_lower <= a.value_upper);
}

TEST_CASE("free path solve picks the best unanchored path") {
    auto config = empty_config();
    config.atoms = {{{-0.9, -0.9}, 1.0}, {{0.9, 0.9}, 2.0}};
    // budget too small to link the atoms, so the best free path is one atom
    const auto r = max_free_path_mass(config, 1.0);
    CHECK(r.value_lower == 2.0);
    const auto both = max_free_path_mass(config, 3.0);
    CHECK(both.value_lower == 3.0);
}
