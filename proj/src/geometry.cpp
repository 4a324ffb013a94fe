#include "greedy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace greedy {

Point axis_point(int dim, int axis, double value) {
    Point p(static_cast<std::size_t>(dim), 0.0);
    p.at(static_cast<std::size_t>(axis)) = value;
    return p;
}

Point zero_point(int dim) { return Point(static_cast<std::size_t>(dim), 0.0); }

double sq_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double norm(std::span<const double> x) { return std::sqrt(sq_norm(x)); }

double dist(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dist: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

void require_aperture(double delta) {
    if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("aperture delta must be in (0,1]");
}

}  // namespace

bool cone_contains(double delta, const Point& apex, const Point& direction, const Point& z) {
    require_aperture(delta);
    if (apex.size() != direction.size() || apex.size() != z.size())
        throw std::invalid_argument("cone_contains: dimension mismatch");
    const double dn = norm(direction);
    if (dn == 0.0) throw std::invalid_argument("cone_contains: zero direction vector");
    double ip = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double w = z[i] - apex[i];
        ip += w * direction[i];
        sq += w * w;
    }
    return ip / dn >= (1.0 - delta) * std::sqrt(sq);
}

bool diamond_contains(double delta, const Point& x, const Point& y, const Point& z) {
    require_aperture(delta);
    if (x.size() != y.size() || x.size() != z.size())
        throw std::invalid_argument("diamond_contains: dimension mismatch");
    Point towards_y(x.size()), towards_x(x.size());
    bool distinct = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        towards_y[i] = y[i] - x[i];
        towards_x[i] = -towards_y[i];
        if (towards_y[i] != 0.0) distinct = true;
    }
    if (!distinct) throw std::invalid_argument("diamond_contains: x == y");
    return cone_contains(delta, x, towards_y, z) && cone_contains(delta, y, towards_x, z);
}

bool slab_contains(const Point& x, const Point& y, const Point& z) {
    if (x.size() != y.size() || x.size() != z.size())
        throw std::invalid_argument("slab_contains: dimension mismatch");
    double axis_sq = 0.0, proj = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = y[i] - x[i];
        axis_sq += u * u;
        proj += (z[i] - x[i]) * u;
    }
    if (axis_sq == 0.0) throw std::invalid_argument("slab_contains: x == y");
    return proj >= 0.0 && proj <= axis_sq;
}

double path_length(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("path_length: empty path");
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) len += dist(points[i], points[i + 1]);
    return len;
}

std::vector<std::pair<int, int>> mst_edges(const std::vector<Point>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::pair<int, int>> edges;
    if (n <= 1) return edges;
    // Prim from vertex 0; ties broken by smallest vertex index for determinism.
    std::vector<char> in_tree(n, 0);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    key[0] = 0.0;
    for (int it = 0; it < n; ++it) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!in_tree[v] && (u == -1 || key[v] < key[u])) u = v;
        in_tree[u] = 1;
        if (parent[u] >= 0) edges.emplace_back(parent[u], u);
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double w = dist(points[u], points[v]);
            if (w < key[v]) {
                key[v] = w;
                parent[v] = u;
            }
        }
    }
    return edges;
}

double mst_length(const std::vector<Point>& points) {
    double total = 0.0;
    for (const auto& [a, b] : mst_edges(points)) total += dist(points[a], points[b]);
    return total;
}

double min_open_tour_length(const Point& start, const std::vector<Point>& targets,
                            const std::optional<Point>& end, int cap) {
    const int n = static_cast<int>(targets.size());
    if (n > cap) {
        throw std::length_error(
            "min_open_tour_length: target count exceeds the exact-DP cap; "
            "use the branch-and-bound solver instead");
    }
    if (n == 0) return end ? dist(start, *end) : 0.0;

    const std::uint32_t full = (n >= 31) ? 0 : ((1u << n) - 1u);
    std::vector<double> dp(static_cast<std::size_t>(full + 1) * n,
                           std::numeric_limits<double>::infinity());
    auto at = [&](std::uint32_t mask, int j) -> double& {
        return dp[static_cast<std::size_t>(mask) * n + j];
    };
    for (int j = 0; j < n; ++j) at(1u << j, j) = dist(start, targets[j]);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const double base = at(mask, j);
            if (!std::isfinite(base)) continue;
            for (int k = 0; k < n; ++k) {
                if (mask & (1u << k)) continue;
                const double cand = base + dist(targets[j], targets[k]);
                double& slot = at(mask | (1u << k), k);
                if (cand < slot) slot = cand;
            }
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double v = at(full, j);
        if (end) v += dist(targets[j], *end);
        best = std::min(best, v);
    }
    return best;
}

Region Region::cone(double delta, Point apex, Point direction) {
    require_aperture(delta);
    if (norm(direction) == 0.0) throw std::invalid_argument("Region::cone: zero direction");
    Region r;
    r.kind = RegionKind::cone;
    r.delta = delta;
    r.anchor_a = std::move(apex);
    r.anchor_b = std::move(direction);
    return r;
}

Region Region::diamond(double delta, Point x, Point y) {
    require_aperture(delta);
    if (x == y) throw std::invalid_argument("Region::diamond: x == y");
    Region r;
    r.kind = RegionKind::diamond;
    r.delta = delta;
    r.anchor_a = std::move(x);
    r.anchor_b = std::move(y);
    return r;
}

Region Region::slab(Point x, Point y) {
    if (x == y) throw std::invalid_argument("Region::slab: x == y");
    Region r;
    r.kind = RegionKind::slab;
    r.anchor_a = std::move(x);
    r.anchor_b = std::move(y);
    return r;
}

bool Region::contains(const Point& z) const {
    switch (kind) {
        case RegionKind::full: return true;
        case RegionKind::cone: return cone_contains(delta, anchor_a, anchor_b, z);
        case RegionKind::diamond: return diamond_contains(delta, anchor_a, anchor_b, z);
        case RegionKind::slab: return slab_contains(anchor_a, anchor_b, z);
    }
    return false;
}

}  // namespace greedy
