#include "greedy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

namespace greedy {

double brute_force_path(const PointConfiguration& config, const SolveSpec& spec, int cap) {
    if (spec.variant != Variant::path)
        throw std::invalid_argument("brute_force_path: variant must be path");
    if (spec.anchors.empty() || spec.anchors.size() > 2)
        throw std::invalid_argument("brute_force_path: expected one or two anchors");
    const bool two = spec.anchors.size() == 2;
    const Point& start = spec.anchors[0];
    std::optional<Point> end;
    if (two) {
        end = spec.anchors[1];
        if (dist(start, *end) > spec.budget)
            throw infeasible_error("brute_force_path: anchor distance exceeds budget");
    }

    std::vector<Point> pts;
    std::vector<double> marks;
    for (const Atom& a : config.atoms) {
        if (!spec.region.contains(a.position)) continue;
        const double sd = dist(start, a.position);
        const double ed = end ? dist(a.position, *end) : 0.0;
        if (sd + ed > spec.budget) continue;
        pts.push_back(a.position);
        marks.push_back(a.mark);
    }
    const int n = static_cast<int>(pts.size());
    if (n > cap)
        throw capacity_error("brute_force_path: " + std::to_string(n) + " atoms exceeds cap " +
                             std::to_string(cap));

    double best = 0.0;
    const std::uint32_t full = n == 0 ? 0 : ((1u << n) - 1u);
    for (std::uint32_t mask = 1; mask <= full && n > 0; ++mask) {
        double mass = 0.0;
        std::vector<Point> subset;
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) {
                mass += marks[static_cast<std::size_t>(j)];
                subset.push_back(pts[static_cast<std::size_t>(j)]);
            }
        }
        if (mass <= best) continue;
        if (min_open_tour_length(start, subset, end) <= spec.budget) best = mass;
    }
    return best;
}

std::size_t LatticeField::index_of(const std::vector<int>& v) const {
    std::size_t idx = 0;
    const std::size_t side = static_cast<std::size_t>(2 * radius + 1);
    for (int c : v) {
        if (c < -radius || c > radius) throw std::out_of_range("lattice vertex outside box");
        idx = idx * side + static_cast<std::size_t>(c + radius);
    }
    return idx;
}

double LatticeField::mass_at(const std::vector<int>& v) const { return masses[index_of(v)]; }

bool LatticeField::in_box(const std::vector<int>& v) const {
    for (int c : v)
        if (c < -radius || c > radius) return false;
    return true;
}

LatticeField sample_lattice_field(int dimension, int radius, const MarkLaw& law, std::uint64_t seed) {
    if (dimension < 2 || radius < 0) throw std::invalid_argument("sample_lattice_field: bad box");
    LatticeField field;
    field.dimension = dimension;
    field.radius = radius;
    field.seed = seed;
    std::size_t total = 1;
    for (int k = 0; k < dimension; ++k) total *= static_cast<std::size_t>(2 * radius + 1);
    field.masses.resize(total);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < total; ++i) field.masses[i] = law.sample_mark(rng);
    return field;
}

namespace {

std::vector<std::vector<int>> lattice_neighbors(const std::vector<int>& v) {
    std::vector<std::vector<int>> out;
    out.reserve(2 * v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        for (int s : {-1, 1}) {
            std::vector<int> w = v;
            w[k] += s;
            out.push_back(std::move(w));
        }
    }
    return out;
}

// Redelmeier-style enumeration of connected subsets of fixed cardinality
// containing the origin; each subset is visited exactly once.
struct LatticeEnum {
    const LatticeField& field;
    int target = 0;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<char> reached;
    std::vector<int> animal_cells;  // flat indices
    std::vector<std::vector<int>> animal;
    double mass = 0.0;

    explicit LatticeEnum(const LatticeField& f) : field(f), reached(f.masses.size(), 0) {}

    void rec(std::vector<std::vector<int>> untried) {
        while (!untried.empty()) {
            std::vector<int> c = untried.back();
            untried.pop_back();
            const double m = field.mass_at(c);
            animal.push_back(c);
            mass += m;
            if (static_cast<int>(animal.size()) == target) {
                best = std::max(best, mass);
            } else {
                std::vector<std::vector<int>> next = untried;
                std::vector<std::size_t> newly;
                for (auto& nb : lattice_neighbors(c)) {
                    if (!field.in_box(nb)) continue;
                    const std::size_t id = field.index_of(nb);
                    if (reached[id]) continue;
                    reached[id] = 1;
                    newly.push_back(id);
                    next.push_back(std::move(nb));
                }
                rec(std::move(next));
                for (std::size_t id : newly) reached[id] = 0;
            }
            mass -= m;
            animal.pop_back();
        }
    }
};

}  // namespace

double lattice_greedy_animal(const LatticeField& field, int n) {
    if (n < 1) throw std::invalid_argument("lattice_greedy_animal: n must be >= 1");
    if (n > kLatticeAnimalMaxSize || field.radius > kLatticeAnimalMaxRadius)
        throw capacity_error("lattice_greedy_animal: instance beyond enumeration bounds");
    if (n - 1 > field.radius)
        throw capacity_error("lattice_greedy_animal: box too small for cardinal n");
    LatticeEnum e(field);
    e.target = n;
    const std::vector<int> origin(static_cast<std::size_t>(field.dimension), 0);
    e.reached[field.index_of(origin)] = 1;
    e.rec({origin});
    return e.best;
}

namespace {

std::vector<int> cell_of(const Point& p) {
    std::vector<int> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = static_cast<int>(std::floor(p[i]));
    return c;
}

// Amanatides-Woo grid traversal; returns the face-adjacent chain of cells the
// segment [a,b] passes through, both endpoint cells included.
std::vector<std::vector<int>> cells_on_segment(const Point& a, const Point& b) {
    const std::size_t d = a.size();
    std::vector<int> cell = cell_of(a);
    const std::vector<int> end_cell = cell_of(b);
    std::vector<std::vector<int>> out{cell};
    std::vector<int> step(d, 0);
    std::vector<double> tmax(d, std::numeric_limits<double>::infinity());
    std::vector<double> tdelta(d, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < d; ++i) {
        const double dir = b[i] - a[i];
        if (dir > 0.0) {
            step[i] = 1;
            tmax[i] = (std::floor(a[i]) + 1.0 - a[i]) / dir;
            tdelta[i] = 1.0 / dir;
        } else if (dir < 0.0) {
            step[i] = -1;
            tmax[i] = (a[i] - std::floor(a[i])) / -dir;
            tdelta[i] = 1.0 / -dir;
        }
    }
    long guard = 0;
    for (std::size_t i = 0; i < d; ++i)
        guard += std::abs(end_cell[i] - cell[i]) + 1;
    while (cell != end_cell && guard-- > 0) {
        std::size_t axis = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (tmax[i] < tmax[axis]) axis = i;
        cell[axis] += step[axis];
        tmax[axis] += tdelta[axis];
        out.push_back(cell);
    }
    return out;
}

}  // namespace

std::map<std::vector<int>, double> cell_masses(const PointConfiguration& config) {
    std::map<std::vector<int>, double> out;
    for (const Atom& a : config.atoms) out[cell_of(a.position)] += a.mark;
    return out;
}

LatticeCover lattice_cover(const PointConfiguration& config, const std::vector<Point>& witness_vertices,
                           const std::vector<std::pair<int, int>>& witness_edges, double ell) {
    if (!(ell > 0.0)) throw std::invalid_argument("lattice_cover: ell must be positive");
    const Point origin = zero_point(config.dimension);
    std::set<std::vector<int>> cells;
    cells.insert(cell_of(origin));
    for (const Point& v : witness_vertices) cells.insert(cell_of(v));
    for (const auto& [i, j] : witness_edges) {
        const auto chain = cells_on_segment(witness_vertices[static_cast<std::size_t>(i)],
                                            witness_vertices[static_cast<std::size_t>(j)]);
        cells.insert(chain.begin(), chain.end());
    }
    if (!witness_vertices.empty()) {
        const auto chain = cells_on_segment(origin, witness_vertices[0]);
        cells.insert(chain.begin(), chain.end());
    }

    LatticeCover cover;
    cover.cells.assign(cells.begin(), cells.end());
    const auto xv = cell_masses(config);
    for (const auto& c : cover.cells) {
        const auto it = xv.find(c);
        if (it != xv.end()) cover.covered_mass += it->second;
    }
    for (const Point& v : witness_vertices) {
        for (const Atom& a : config.atoms)
            if (a.position == v) cover.witness_mass += a.mark;
    }
    cover.cells_per_length = static_cast<double>(cover.cells.size()) / ell;
    return cover;
}

}  // namespace greedy
