#pragma once

#include <optional>
#include <span>
#include <vector>

namespace greedy {

// Points carry their dimension at runtime so d=2 and d=3 experiments share code.
using Point = std::vector<double>;

Point axis_point(int dim, int axis, double value);
Point zero_point(int dim);

double sq_norm(std::span<const double> x);
double norm(std::span<const double> x);
double dist(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

// Closed cone with apex, axis `direction` and aperture delta in (0,1]:
// <z - apex, u> >= (1 - delta) * |z - apex|, u = direction/|direction|.
// Boundary points count as inside.
bool cone_contains(double delta, const Point& apex, const Point& direction, const Point& z);

// Intersection of the two cones anchored at x and y, each aimed at the other.
bool diamond_contains(double delta, const Point& x, const Point& y, const Point& z);

// Slab between the two hyperplanes through x and y orthogonal to y - x
// (the delta = 1 diamond): 0 <= <z-x, y-x> <= |y-x|^2.
bool slab_contains(const Point& x, const Point& y, const Point& z);

// Total length of the polygonal line through `points`, in order.
double path_length(const std::vector<Point>& points);

// Length of a Euclidean minimum spanning tree over the set; 0 for size <= 1.
double mst_length(const std::vector<Point>& points);
std::vector<std::pair<int, int>> mst_edges(const std::vector<Point>& points);

inline constexpr int kTourHardCap = 20;

// Minimal length of a path from `start` through all `targets` (in any order),
// ending at `end` when given. Held-Karp subset dynamic program; capacity-bounded.
double min_open_tour_length(const Point& start, const std::vector<Point>& targets,
                            const std::optional<Point>& end, int cap = kTourHardCap);

enum class RegionKind { full, cone, diamond, slab };

struct Region {
    RegionKind kind = RegionKind::full;
    double delta = 1.0;
    Point anchor_a;  // cone: apex; diamond/slab: first endpoint
    Point anchor_b;  // cone: direction; diamond/slab: second endpoint

    bool contains(const Point& z) const;

    static Region full() { return Region{}; }
    static Region cone(double delta, Point apex, Point direction);
    static Region diamond(double delta, Point x, Point y);
    static Region slab(Point x, Point y);
};

}  // namespace greedy
