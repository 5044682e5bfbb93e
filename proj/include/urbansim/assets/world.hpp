#pragma once

#include <cstdint>
#include <vector>

#include "urbansim/assets/catalog.hpp"
#include "urbansim/assets/material.hpp"
#include "urbansim/assets/mesh.hpp"
#include "urbansim/scene/types.hpp"

namespace urbansim {

/// Flattened world-space geometry of one scene: a single triangle soup with
/// per-triangle class ids (in the mesh) and material indices.
struct World {
    Mesh mesh;
    std::vector<std::uint32_t> triangle_material;
    std::vector<Material> materials;

    /// Appends `m` with one material shared by all its triangles.
    void add(const Mesh& m, const Material& material);
};

/// Height of road surfaces above the ground plane, avoiding coplanar overlap.
inline constexpr double kRoadLift = 0.02;

/// Rigid placement of an object-space mesh: rotate by `yaw` about +z, then
/// translate to (position, 0). Scaling is applied by build_asset.
Mesh place(const Mesh& object_space, Vec2 position, double yaw);

/// Ground plane (region plus a margin) + road surface + one transformed
/// instance per scene object. Throws std::runtime_error naming the object
/// when a mark does not resolve in the catalog.
World instantiate_scene_geometry(const SceneState& scene, const AssetCatalog& catalog);

}  // namespace urbansim
