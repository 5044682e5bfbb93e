#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urbansim/core/math.hpp"

namespace urbansim {

struct GridCell {
    int x = 0;
    int y = 0;
    friend constexpr bool operator==(GridCell, GridCell) = default;
};

/// Manhattan road grid parameters, all in meters.
struct RoadGridConfig {
    double cell_size = 2.0;
    double spacing = 40.0;  ///< distance between parallel road strips
    double width = 8.0;     ///< strip width
    double offset = 16.0;   ///< position of the first strip from the region corner
};

/// Occupancy lattice over the ground region; road cells form a 4-connected graph.
class RoadNetwork {
public:
    RoadNetwork() = default;

    /// Throws std::invalid_argument if dimensions mismatch or no cell is road.
    RoadNetwork(Vec2 origin, double cell_size, int nx, int ny, std::vector<std::uint8_t> occupancy);

    Vec2 origin() const { return origin_; }
    double cell_size() const { return cell_size_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const std::vector<std::uint8_t>& occupancy() const { return occupancy_; }

    bool in_bounds(GridCell c) const { return c.x >= 0 && c.y >= 0 && c.x < nx_ && c.y < ny_; }
    bool is_road(GridCell c) const { return in_bounds(c) && occupancy_[index(c)] != 0; }
    bool is_road(Vec2 p) const { return is_road(cell_of(p)); }

    GridCell cell_of(Vec2 p) const;
    Vec2 cell_center(GridCell c) const;
    int index(GridCell c) const { return c.y * nx_ + c.x; }
    GridCell cell_at(int index) const { return {index % nx_, index / nx_}; }

    const std::vector<GridCell>& road_cells() const { return road_cells_; }

    /// Road-cell neighbors of `c` in 4-connectivity, in fixed order (+x, -x, +y, -y).
    std::vector<GridCell> neighbors(GridCell c) const;

    friend bool operator==(const RoadNetwork& a, const RoadNetwork& b) {
        return a.origin_ == b.origin_ && a.cell_size_ == b.cell_size_ && a.nx_ == b.nx_ && a.ny_ == b.ny_ &&
               a.occupancy_ == b.occupancy_;
    }

private:
    Vec2 origin_;
    double cell_size_ = 1.0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<std::uint8_t> occupancy_;
    std::vector<GridCell> road_cells_;
};

struct Region;

/// Road strips parallel to both axes every `spacing` meters.
RoadNetwork make_manhattan_roads(const Region& region, const RoadGridConfig& config);

/// A* over the 4-connected road-cell graph with unit edge cost and a Euclidean
/// heuristic. Returns the cell sequence from start to goal (inclusive), or
/// nullopt when the goal is unreachable. Throws if start or goal is not road.
std::optional<std::vector<GridCell>> plan_path_cells(const RoadNetwork& roads, GridCell start, GridCell goal);

/// World-space variant: waypoints are road-cell centers.
std::optional<std::vector<Vec2>> plan_path(const RoadNetwork& roads, Vec2 start, Vec2 goal);

/// Chebyshev distance, in cells, from each lattice cell to the nearest road cell.
std::vector<int> road_distance_field(const RoadNetwork& roads);

}  // namespace urbansim
