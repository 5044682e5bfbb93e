#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "urbansim/assets/catalog.hpp"
#include "urbansim/core/config.hpp"
#include "urbansim/render/renderer.hpp"
#include "urbansim/scene/point_process.hpp"

namespace urbansim {

/// One rendering fidelity: "lambertian", "cook_torrance" or "mcpt<spp>".
struct FidelityTier {
    std::string name;
    ShadingMode mode = ShadingMode::Lambertian;
    int spp = 1;

    friend bool operator==(const FidelityTier&, const FidelityTier&) = default;
};

FidelityTier parse_fidelity(const std::string& name);
/// lambertian, cook_torrance, mcpt10, mcpt40, mcpt70, mcpt100, mcpt130.
std::vector<FidelityTier> default_fidelities();

/// Street-level camera placement on road cells.
struct CameraPolicy {
    double height = 1.5;   ///< meters above ground
    double pitch = 0.0;    ///< radians, positive looks up
    double vertical_fov = 1.0471975511965976;
    int width = 128;
    int height_px = 128;
    int candidates = 16;        ///< road cells drawn per scene
    double min_clearance = 3.0; ///< meters to the nearest dynamic object

    void validate() const;
};

struct ExperimentConfig {
    SceneConfig scene;
    std::array<int, kNumCategories> asset_counts{6, 3, 4, 4};
    std::uint64_t catalog_seed = 7;
    AppearanceStyle appearance;
    CameraPolicy camera;
    Lighting lighting;
    Medium medium;
    int max_bounces = 8;
    int rr_start_bounce = 3;
    std::vector<FidelityTier> fidelities = default_fidelities();
    int n_scenes = 3;
    std::uint64_t base_seed = 1000;
    int threads = 0;

    /// Keys of the [target] section, written "section.key", applied on top
    /// of this configuration to obtain the shifted domain.
    std::vector<std::pair<std::string, std::string>> target_overrides;

    /// Defaults: street scene with buildings and trees off-road, vehicles and
    /// pedestrians on roads, and a shifted target domain.
    static ExperimentConfig defaults();

    /// Reads every section over the defaults. Unknown sections or keys throw.
    static ExperimentConfig from_ini(const KeyValueConfig& ini);
    static ExperimentConfig load(const std::filesystem::path& path);
    KeyValueConfig to_ini() const;

    /// This configuration with the [target] overrides applied (and cleared).
    ExperimentConfig target_domain() const;

    void validate() const;
};

}  // namespace urbansim
