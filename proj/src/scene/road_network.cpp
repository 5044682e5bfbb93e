#include "urbansim/scene/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "urbansim/scene/types.hpp"

namespace urbansim {

RoadNetwork::RoadNetwork(Vec2 origin, double cell_size, int nx, int ny, std::vector<std::uint8_t> occupancy)
    : origin_(origin), cell_size_(cell_size), nx_(nx), ny_(ny), occupancy_(std::move(occupancy)) {
    if (!(cell_size > 0.0) || nx <= 0 || ny <= 0)
        throw std::invalid_argument("RoadNetwork: lattice must have positive size");
    if (occupancy_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
        throw std::invalid_argument("RoadNetwork: occupancy size does not match lattice");
    for (int i = 0; i < nx * ny; ++i)
        if (occupancy_[i]) road_cells_.push_back(cell_at(i));
    if (road_cells_.empty()) throw std::invalid_argument("RoadNetwork: no road cells");
}

GridCell RoadNetwork::cell_of(Vec2 p) const {
    return {static_cast<int>(std::floor((p.x - origin_.x) / cell_size_)),
            static_cast<int>(std::floor((p.y - origin_.y) / cell_size_))};
}

Vec2 RoadNetwork::cell_center(GridCell c) const {
    return {origin_.x + (c.x + 0.5) * cell_size_, origin_.y + (c.y + 0.5) * cell_size_};
}

std::vector<GridCell> RoadNetwork::neighbors(GridCell c) const {
    std::vector<GridCell> out;
    out.reserve(4);
    for (GridCell n : {GridCell{c.x + 1, c.y}, GridCell{c.x - 1, c.y}, GridCell{c.x, c.y + 1}, GridCell{c.x, c.y - 1}})
        if (is_road(n)) out.push_back(n);
    return out;
}

RoadNetwork make_manhattan_roads(const Region& region, const RoadGridConfig& config) {
    region.validate();
    if (!(config.cell_size > 0.0) || !(config.spacing > 0.0) || !(config.width > 0.0))
        throw std::invalid_argument("road grid: cell_size, spacing and width must be positive");
    const int nx = std::max(1, static_cast<int>(std::ceil(region.width() / config.cell_size)));
    const int ny = std::max(1, static_cast<int>(std::ceil(region.height() / config.cell_size)));
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(nx) * ny, 0);
    auto on_strip = [&](double local) {
        const double m = std::fmod(local - config.offset, config.spacing);
        const double w = m < 0 ? m + config.spacing : m;
        return w < config.width;
    };
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const double cx = (x + 0.5) * config.cell_size;
            const double cy = (y + 0.5) * config.cell_size;
            occ[static_cast<std::size_t>(y) * nx + x] = (on_strip(cx) || on_strip(cy)) ? 1 : 0;
        }
    }
    return RoadNetwork(region.min_corner, config.cell_size, nx, ny, std::move(occ));
}

std::optional<std::vector<GridCell>> plan_path_cells(const RoadNetwork& roads, GridCell start, GridCell goal) {
    if (!roads.is_road(start)) throw std::invalid_argument("plan_path: start is not on a road cell");
    if (!roads.is_road(goal)) throw std::invalid_argument("plan_path: goal is not on a road cell");

    const int n = roads.nx() * roads.ny();
    constexpr int kUnvisited = std::numeric_limits<int>::max();
    std::vector<int> g(n, kUnvisited);
    std::vector<int> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    auto heuristic = [&](GridCell c) { return std::hypot(double(c.x - goal.x), double(c.y - goal.y)); };

    struct Entry {
        double f;
        int g;
        int index;
    };
    // Lowest f first; among equal f prefer deeper nodes, then lower index.
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.index > b.index;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

    const int start_idx = roads.index(start);
    const int goal_idx = roads.index(goal);
    g[start_idx] = 0;
    open.push({heuristic(start), 0, start_idx});

    while (!open.empty()) {
        const Entry e = open.top();
        open.pop();
        if (closed[e.index]) continue;
        closed[e.index] = 1;
        if (e.index == goal_idx) break;
        for (GridCell nb : roads.neighbors(roads.cell_at(e.index))) {
            const int ni = roads.index(nb);
            if (closed[ni]) continue;
            const int ng = e.g + 1;
            if (ng < g[ni]) {
                g[ni] = ng;
                parent[ni] = e.index;
                open.push({ng + heuristic(nb), ng, ni});
            }
        }
    }

    if (!closed[goal_idx]) return std::nullopt;
    std::vector<GridCell> path;
    for (int i = goal_idx; i != -1; i = parent[i]) path.push_back(roads.cell_at(i));
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<std::vector<Vec2>> plan_path(const RoadNetwork& roads, Vec2 start, Vec2 goal) {
    auto cells = plan_path_cells(roads, roads.cell_of(start), roads.cell_of(goal));
    if (!cells) return std::nullopt;
    std::vector<Vec2> waypoints;
    waypoints.reserve(cells->size());
    for (GridCell c : *cells) waypoints.push_back(roads.cell_center(c));
    return waypoints;
}

std::vector<int> road_distance_field(const RoadNetwork& roads) {
    // Two-pass chamfer with unit weights on the 8-neighborhood is exact for Chebyshev distance.
    const int nx = roads.nx();
    const int ny = roads.ny();
    const int far = nx + ny + 1;
    std::vector<int> d(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx * ny; ++i) d[i] = roads.occupancy()[i] ? 0 : far;
    auto at = [&](int x, int y) -> int& { return d[static_cast<std::size_t>(y) * nx + x]; };
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int& v = at(x, y);
            if (x > 0) v = std::min(v, at(x - 1, y) + 1);
            if (y > 0) {
                v = std::min(v, at(x, y - 1) + 1);
                if (x > 0) v = std::min(v, at(x - 1, y - 1) + 1);
                if (x + 1 < nx) v = std::min(v, at(x + 1, y - 1) + 1);
            }
        }
    for (int y = ny - 1; y >= 0; --y)
        for (int x = nx - 1; x >= 0; --x) {
            int& v = at(x, y);
            if (x + 1 < nx) v = std::min(v, at(x + 1, y) + 1);
            if (y + 1 < ny) {
                v = std::min(v, at(x, y + 1) + 1);
                if (x + 1 < nx) v = std::min(v, at(x + 1, y + 1) + 1);
                if (x > 0) v = std::min(v, at(x - 1, y + 1) + 1);
            }
        }
    return d;
}

}  // namespace urbansim
