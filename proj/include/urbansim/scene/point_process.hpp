#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "urbansim/core/rng.hpp"
#include "urbansim/scene/road_network.hpp"
#include "urbansim/scene/types.hpp"

namespace urbansim {

/// Union of equal-sized lattice cells; the bounded space of a point process
/// restricted to part of the ground (road cells, off-road cells).
class CellDomain {
public:
    CellDomain(const RoadNetwork& lattice, std::vector<GridCell> cells);

    double area() const;
    bool empty() const { return cells_.empty(); }
    const std::vector<GridCell>& cells() const { return cells_; }
    bool contains(Vec2 p) const;

    /// Uniform point on the domain: uniform cell, then uniform inside it.
    Vec2 sample(Pcg32& rng) const;

private:
    Vec2 origin_;
    double cell_size_ = 1.0;
    int nx_ = 0;
    std::vector<GridCell> cells_;
    std::vector<std::uint8_t> member_;
};

/// All road cells.
CellDomain road_domain(const RoadNetwork& roads);

/// Cells whose Chebyshev distance to the nearest road cell exceeds `clearance_cells`.
CellDomain off_road_domain(const RoadNetwork& roads, int clearance_cells);

/// Draw from Poisson(mean), by inversion in chunks of bounded mean.
std::uint64_t sample_poisson(double mean, Pcg32& rng);

/// Number of points of a homogeneous Poisson process with the configured
/// intensity on a domain of the given area.
std::uint64_t sample_count(const PointProcessConfig& config, double area, Pcg32& rng);
std::uint64_t sample_count(const PointProcessConfig& config, const Region& region, Pcg32& rng);

std::vector<Vec2> sample_locations(std::size_t n, const Region& region, Pcg32& rng);
std::vector<Vec2> sample_locations(std::size_t n, const CellDomain& domain, Pcg32& rng);

/// Independent marks from the factored prior. Draw order per mark:
/// category, asset index, scale, orientation.
std::vector<Mark> sample_marks(std::size_t n, const MarkPriors& priors, Pcg32& rng);

struct RepulsionResult {
    std::vector<SceneObject> objects;
    int dropped = 0;
};

using LocationSampler = std::function<Vec2(Pcg32&)>;

/// Hard-core Gibbs constraint (energy +inf inside the pair distance, 0 outside)
/// enforced by dart throwing: objects are visited in order; one that conflicts
/// with an already accepted object is re-drawn from `resample` up to
/// max_rejection_rounds times and dropped if it still conflicts.
RepulsionResult apply_repulsion(std::vector<SceneObject> objects, const PointProcessConfig& config,
                                const LocationSampler& resample, Pcg32& rng);
RepulsionResult apply_repulsion(std::vector<SceneObject> objects, const PointProcessConfig& config,
                                const Region& region, Pcg32& rng);

/// Everything needed to sample a scene apart from the seed.
struct SceneConfig {
    Region region{{0.0, 0.0}, {160.0, 160.0}};
    RoadGridConfig roads;
    PointProcessConfig static_process;
    PointProcessConfig dynamic_process;
    MarkPriors static_marks;
    MarkPriors dynamic_marks;
    double static_road_clearance = 2.0;  ///< meters kept free between static objects and roads
    double time_fraction = 0.25;

    void validate() const;
};

/// Two parallel marked Poisson processes: static objects off-road, dynamic
/// objects on road cells with a destination and A* path. Pure function of
/// (config, roads, seed).
SceneState sample_scene(const SceneConfig& config, const RoadNetwork& roads, std::uint64_t seed);
SceneState sample_scene(const SceneConfig& config, std::uint64_t seed);

}  // namespace urbansim
