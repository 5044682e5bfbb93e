#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "urbansim/assets/material.hpp"
#include "urbansim/assets/mesh.hpp"

namespace urbansim {

/// Global appearance knobs applied to every procedural material. A shifted
/// style (different tint, texture scale, palette) produces a second domain.
struct AppearanceStyle {
    Rgb tint{1.0, 1.0, 1.0};
    double texture_period_scale = 1.0;
    double specular_scale = 1.0;
    std::uint64_t palette_seed = 0;
};

/// One asset: shape parameters for the procedural generator (or an imported
/// mesh) plus its material.
struct AssetEntry {
    Category category = Category::Building;
    std::array<double, 4> dims{};  ///< category-specific extents in meters
    int variant = 0;
    Material material;
    std::optional<Mesh> imported;
};

class AssetCatalog {
public:
    /// Deterministic catalog with counts[c] procedural assets per category.
    static AssetCatalog procedural(const std::array<int, kNumCategories>& counts, std::uint64_t seed,
                                   const AppearanceStyle& style = {});

    int count(Category c) const;
    /// Throws std::out_of_range for an unknown category or index.
    const AssetEntry& entry(Category c, int index) const;

    /// Appends an imported mesh as the next asset index of `c`.
    int add_imported(Category c, Mesh mesh, Material material);

    const Material& ground_material() const { return ground_; }
    const Material& road_material() const { return road_; }

private:
    std::array<std::vector<AssetEntry>, kNumCategories> entries_;
    Material ground_;
    Material road_;
};

/// Object-space mesh (base at z = 0, centered on the origin) of one asset,
/// uniformly scaled by `scale`, together with its material.
std::pair<Mesh, Material> build_asset(const AssetCatalog& catalog, Category category, int asset_index, double scale);

}  // namespace urbansim
