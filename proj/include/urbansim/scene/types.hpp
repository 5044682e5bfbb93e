#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "urbansim/core/labels.hpp"
#include "urbansim/core/math.hpp"
#include "urbansim/scene/road_network.hpp"

namespace urbansim {

/// Axis-aligned bounded region of the ground plane, in meters.
struct Region {
    Vec2 min_corner;
    Vec2 max_corner;

    double width() const { return max_corner.x - min_corner.x; }
    double height() const { return max_corner.y - min_corner.y; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y && p.y <= max_corner.y;
    }
    /// Throws std::invalid_argument unless max > min on both axes.
    void validate() const;

    friend bool operator==(const Region&, const Region&) = default;
};

/// Homogeneous Poisson prior on locations plus a hard-core repulsion radius per category.
struct PointProcessConfig {
    double intensity = 0.0;  ///< expected objects per square meter
    std::array<double, kNumCategories> hard_core_radius{};
    int max_rejection_rounds = 30;

    /// Minimum allowed separation for a pair of categories (the larger radius).
    double pair_distance(Category a, Category b) const {
        const double ra = hard_core_radius[index_of(a)];
        const double rb = hard_core_radius[index_of(b)];
        return ra > rb ? ra : rb;
    }
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Factored mark prior: category ~ categorical, then asset index, scale and
/// orientation drawn independently and uniformly.
struct MarkPriors {
    std::array<double, kNumCategories> category_weights{};
    std::array<Interval, kNumCategories> scale_range{};
    Interval orientation_range{0.0, kTwoPi};
    std::array<int, kNumCategories> asset_counts{};

    void validate() const;
};

struct Mark {
    Category category = Category::Building;
    int asset_index = 0;
    double scale = 1.0;
    double orientation = 0.0;  ///< yaw about +z, radians

    friend bool operator==(const Mark&, const Mark&) = default;
};

struct SceneObject {
    Vec2 position;
    Mark mark;
    std::optional<Vec2> destination;  ///< present iff the object is dynamic
    std::vector<Vec2> path;           ///< planned waypoints from position to destination

    bool is_dynamic() const { return destination.has_value(); }

    friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

/// Position of a dynamic object after travelling `fraction` of its path length.
Vec2 posed_position(const SceneObject& object, double fraction);

struct SceneState {
    std::vector<SceneObject> static_objects;
    std::vector<SceneObject> dynamic_objects;
    Region region;
    RoadNetwork roads;
    std::uint64_t seed = 0;
    double time_fraction = 0.0;  ///< where along its path each dynamic object is posed
    int dropped_static = 0;
    int dropped_dynamic = 0;

    friend bool operator==(const SceneState&, const SceneState&) = default;
};

}  // namespace urbansim
