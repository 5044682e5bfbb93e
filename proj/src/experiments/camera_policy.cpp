#include "urbansim/experiments/camera_policy.hpp"

#include <array>
#include <cmath>

#include "urbansim/core/rng.hpp"

namespace urbansim {

namespace {

constexpr int kMaxRun = 64;

int road_run(const RoadNetwork& roads, GridCell c, int dx, int dy) {
    int n = 0;
    for (GridCell p{c.x + dx, c.y + dy}; n < kMaxRun && roads.is_road(p); p = {p.x + dx, p.y + dy}) ++n;
    return n;
}

double nearest_dynamic(const SceneState& scene, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : scene.dynamic_objects) best = std::min(best, distance(p, posed_position(o, scene.time_fraction)));
    return best;
}

}  // namespace

Camera choose_camera(const SceneState& scene, const CameraPolicy& policy, std::uint64_t seed) {
    policy.validate();
    const RoadNetwork& roads = scene.roads;
    const auto& cells = roads.road_cells();
    Pcg32 rng = make_stream(seed, RngStream::Camera);
    constexpr std::array<std::array<int, 2>, 4> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

    struct Choice {
        GridCell cell;
        int dir = 0;
        int run = -1;
    };
    Choice clear, any;
    for (int k = 0; k < policy.candidates; ++k) {
        const GridCell c = cells[rng.bounded(static_cast<std::uint32_t>(cells.size()))];
        const bool is_clear = nearest_dynamic(scene, roads.cell_center(c)) >= policy.min_clearance;
        for (int d = 0; d < 4; ++d) {
            const int run = road_run(roads, c, kDirs[d][0], kDirs[d][1]);
            if (run > any.run) any = {c, d, run};
            if (is_clear && run > clear.run) clear = {c, d, run};
        }
    }
    const Choice& pick = clear.run >= 0 ? clear : any;
    const Vec2 p = roads.cell_center(pick.cell);
    const double cp = std::cos(policy.pitch), sp = std::sin(policy.pitch);
    Camera cam;
    cam.position = {p.x, p.y, policy.height};
    cam.look_at = cam.position + Vec3{cp * kDirs[pick.dir][0], cp * kDirs[pick.dir][1], sp};
    cam.vertical_fov = policy.vertical_fov;
    cam.width = policy.width;
    cam.height = policy.height_px;
    return cam;
}

}  // namespace urbansim
