#include "urbansim/assets/world.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "urbansim/assets/primitives.hpp"
#include "urbansim/scene/point_process.hpp"

namespace urbansim {

void World::add(const Mesh& m, const Material& material) {
    const auto id = static_cast<std::uint32_t>(materials.size());
    materials.push_back(material);
    mesh.append(m);
    triangle_material.insert(triangle_material.end(), m.triangles.size(), id);
}

Mesh place(const Mesh& object_space, Vec2 position, double yaw) {
    Mesh m = object_space;
    const double c = std::cos(yaw), s = std::sin(yaw);
    for (Vec3& v : m.vertices) v = {c * v.x - s * v.y + position.x, s * v.x + c * v.y + position.y, v.z};
    return m;
}

namespace {

void add_roads(World& world, const RoadNetwork& roads, const Material& material) {
    // One quad per horizontal run of road cells.
    Mesh m;
    const double cs = roads.cell_size();
    const Vec2 o = roads.origin();
    for (int y = 0; y < roads.ny(); ++y) {
        int x = 0;
        while (x < roads.nx()) {
            if (!roads.is_road(GridCell{x, y})) {
                ++x;
                continue;
            }
            const int start = x;
            while (x < roads.nx() && roads.is_road(GridCell{x, y})) ++x;
            const double x0 = o.x + start * cs, x1 = o.x + x * cs;
            const double y0 = o.y + y * cs, y1 = o.y + (y + 1) * cs;
            m.append(make_quad({x0, y0, kRoadLift}, {x1, y0, kRoadLift}, {x1, y1, kRoadLift}, {x0, y1, kRoadLift},
                               ClassId::Ground));
        }
    }
    world.add(m, material);
}

void add_object(World& world, const SceneObject& obj, Vec2 position, const AssetCatalog& catalog,
                const std::string& label) {
    try {
        auto [mesh, material] = build_asset(catalog, obj.mark.category, obj.mark.asset_index, obj.mark.scale);
        world.add(place(mesh, position, obj.mark.orientation), material);
    } catch (const std::exception& e) {
        throw std::runtime_error(label + " (" + std::string(name_of(obj.mark.category)) + ", asset " +
                                 std::to_string(obj.mark.asset_index) + "): " + e.what());
    }
}

}  // namespace

World instantiate_scene_geometry(const SceneState& scene, const AssetCatalog& catalog) {
    scene.region.validate();
    World world;
    const double margin = std::fmax(scene.region.width(), scene.region.height());
    const Vec2 lo = scene.region.min_corner - Vec2{margin, margin};
    const Vec2 hi = scene.region.max_corner + Vec2{margin, margin};
    world.add(make_quad({lo.x, lo.y, 0.0}, {hi.x, lo.y, 0.0}, {hi.x, hi.y, 0.0}, {lo.x, hi.y, 0.0}, ClassId::Ground),
              catalog.ground_material());
    add_roads(world, scene.roads, catalog.road_material());

    for (std::size_t i = 0; i < scene.static_objects.size(); ++i) {
        const auto& obj = scene.static_objects[i];
        add_object(world, obj, obj.position, catalog, "static object " + std::to_string(i));
    }
    for (std::size_t i = 0; i < scene.dynamic_objects.size(); ++i) {
        const auto& obj = scene.dynamic_objects[i];
        add_object(world, obj, posed_position(obj, scene.time_fraction), catalog, "dynamic object " + std::to_string(i));
    }
    return world;
}

}  // namespace urbansim
