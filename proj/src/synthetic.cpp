#include "parch/synthetic.hpp"

#include "parch/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <tuple>
#include <unordered_set>

namespace parch {

namespace {

struct Point {
    double x, y;
};

double sq_dist(const Point& a, const Point& b)
{
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::uint32_t edge_weight(const Point& a, const Point& b)
{
    // scaled Euclidean length, strictly positive
    return static_cast<std::uint32_t>(std::sqrt(sq_dist(a, b)) * 100000.0) + 1;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

InputGraph generate_synthetic(std::uint32_t node_count, std::uint32_t avg_degree,
                              std::uint64_t seed)
{
    InputGraph g;
    g.node_count = node_count;
    if (node_count == 0)
        return g;

    SplitMix64 rng(derive_seed(seed, 0x5E0));
    std::vector<Point> points(node_count);
    for (Point& p : points)
        p = Point{rng.next_unit(), rng.next_unit()};

    // grid buckets with ~2 expected points per cell
    const std::uint32_t grid = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::sqrt(static_cast<double>(node_count) / 2.0)));
    std::vector<std::vector<std::uint32_t>> cells(static_cast<std::size_t>(grid) * grid);
    auto cell_of = [&](const Point& p) {
        auto cx = std::min<std::uint32_t>(grid - 1, static_cast<std::uint32_t>(p.x * grid));
        auto cy = std::min<std::uint32_t>(grid - 1, static_cast<std::uint32_t>(p.y * grid));
        return cy * grid + cx;
    };
    for (std::uint32_t v = 0; v < node_count; ++v)
        cells[cell_of(points[v])].push_back(v);

    const std::uint32_t k = std::max<std::uint32_t>(1, avg_degree / 2);
    std::unordered_set<std::uint64_t> present;
    UnionFind components(node_count);
    auto edge_key = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
    };
    auto add_edge = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b)
            return;
        if (!present.insert(edge_key(a, b)).second)
            return;
        g.arcs.push_back(Arc{a, b, edge_weight(points[a], points[b]), true, true});
        components.unite(a, b);
    };

    // k nearest neighbors per node via expanding ring search over the grid
    std::vector<std::pair<double, std::uint32_t>> candidates;
    for (std::uint32_t v = 0; v < node_count; ++v) {
        const Point& p = points[v];
        auto cx = static_cast<std::int64_t>(std::min<std::uint32_t>(
            grid - 1, static_cast<std::uint32_t>(p.x * grid)));
        auto cy = static_cast<std::int64_t>(std::min<std::uint32_t>(
            grid - 1, static_cast<std::uint32_t>(p.y * grid)));
        candidates.clear();
        const auto grid_s = static_cast<std::int64_t>(grid);
        for (std::int64_t ring = 0; ring < grid_s; ++ring) {
            for (std::int64_t dy = -ring; dy <= ring; ++dy) {
                for (std::int64_t dx = -ring; dx <= ring; ++dx) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring)
                        continue; // only the new ring
                    std::int64_t x = cx + dx, y = cy + dy;
                    if (x < 0 || y < 0 || x >= grid_s || y >= grid_s)
                        continue;
                    for (std::uint32_t u : cells[static_cast<std::size_t>(y) * grid + x])
                        if (u != v)
                            candidates.emplace_back(sq_dist(p, points[u]), u);
                }
            }
            // a full extra ring guarantees the current k nearest are exact;
            // close enough for a synthetic instance without it
            if (candidates.size() >= k && ring >= 1)
                break;
        }
        std::size_t take = std::min<std::size_t>(k, candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                          candidates.end());
        for (std::size_t i = 0; i < take; ++i)
            add_edge(v, candidates[i].second);
    }

    // stitch remaining components along the x-order so the graph is connected
    std::vector<std::uint32_t> by_x(node_count);
    std::iota(by_x.begin(), by_x.end(), 0u);
    std::sort(by_x.begin(), by_x.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::tie(points[a].x, points[a].y, a) < std::tie(points[b].x, points[b].y, b);
    });
    for (std::uint32_t i = 1; i < node_count; ++i)
        if (components.find(by_x[i - 1]) != components.find(by_x[i]))
            add_edge(by_x[i - 1], by_x[i]);

    std::sort(g.arcs.begin(), g.arcs.end(), [](const Arc& a, const Arc& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return g;
}

} // namespace parch
