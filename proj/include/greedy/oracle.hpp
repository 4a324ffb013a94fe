#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "greedy/pointprocess.hpp"
#include "greedy/solver.hpp"

namespace greedy {

// Exact path optimum by enumerating every atom subset and testing the exact
// minimal visiting length (Held-Karp per subset). Test oracle of record;
// capacity-bounded at 12 atoms after filtering.
double brute_force_path(const PointConfiguration& config, const SolveSpec& spec, int cap = 12);

// i.i.d. nonnegative masses on the lattice box [-radius, radius]^d.
struct LatticeField {
    int dimension = 2;
    int radius = 0;
    std::vector<double> masses;  // row-major over the box
    std::uint64_t seed = 0;

    std::size_t index_of(const std::vector<int>& v) const;
    double mass_at(const std::vector<int>& v) const;
    bool in_box(const std::vector<int>& v) const;
};

LatticeField sample_lattice_field(int dimension, int radius, const MarkLaw& law, std::uint64_t seed);

inline constexpr int kLatticeAnimalMaxSize = 8;
inline constexpr int kLatticeAnimalMaxRadius = 6;

// Maximal mass over connected lattice subsets of cardinal n containing the
// origin. Exhaustive connected-subset enumeration; capacity-bounded.
double lattice_greedy_animal(const LatticeField& field, int n);

struct LatticeCover {
    std::vector<std::vector<int>> cells;  // covering lattice animal, contains the origin cell
    double covered_mass = 0.0;            // sum of X_v over the cover
    double witness_mass = 0.0;
    double cells_per_length = 0.0;        // #cells / ell, the empirical covering constant
};

// Unit-cell masses X_v = mass(v + [0,1)^d) for the cells meeting the window.
std::map<std::vector<int>, double> cell_masses(const PointConfiguration& config);

// Covering lattice animal for a continuous witness (vertex positions plus
// tree/path edges as index pairs): cells of all vertices, cells crossed by
// edges, and a straight-line cell path tying the origin cell in.
LatticeCover lattice_cover(const PointConfiguration& config, const std::vector<Point>& witness_vertices,
                           const std::vector<std::pair<int, int>>& witness_edges, double ell);

}  // namespace greedy
