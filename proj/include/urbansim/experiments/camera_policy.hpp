#pragma once

#include <cstdint>

#include "urbansim/experiments/experiment_config.hpp"
#include "urbansim/render/camera.hpp"
#include "urbansim/scene/types.hpp"

namespace urbansim {

/// Street-level camera for one scene: `policy.candidates` road cells are drawn
/// from the Camera stream of `seed`; each is tried looking along +x, -x, +y
/// and -y, and the view with the longest straight run of road ahead wins.
/// Candidates closer than min_clearance to a dynamic object are skipped
/// unless every candidate is.
Camera choose_camera(const SceneState& scene, const CameraPolicy& policy, std::uint64_t seed);

}  // namespace urbansim
