#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "urbansim/core/image.hpp"
#include "urbansim/core/labels.hpp"
#include "urbansim/render/path_tracer.hpp"

namespace urbansim {

enum class ShadingMode : std::uint8_t { Lambertian, CookTorrance, PathTracing };

std::string to_string(ShadingMode mode);
ShadingMode parse_shading_mode(const std::string& text);

struct RenderConfig {
    ShadingMode mode = ShadingMode::Lambertian;
    int spp = 1;  ///< samples per pixel, path tracing only
    int max_bounces = 8;
    int rr_start_bounce = 3;
    std::uint64_t seed = 0;
    int threads = 0;  ///< 0 selects std::thread::hardware_concurrency()

    void validate() const;
};

struct Framebuffer {
    Image<Rgb32f> linear;  ///< radiance before tone mapping
    Image<Rgb8> display;
};

struct GroundtruthBundle {
    LabelMap labels;
    Image<float> depth;     ///< distance along the view ray, +inf for sky
    Image<Vec3f> normals;   ///< unit, facing the camera; zero for sky

    friend bool operator==(const GroundtruthBundle&, const GroundtruthBundle&) = default;
};

struct RenderStats {
    std::uint64_t rejected_samples = 0;  ///< non-finite or negative estimates dropped
};

struct RenderOutput {
    Framebuffer frame;
    GroundtruthBundle groundtruth;
    RenderStats stats;
};

/// Reinhard x/(1+x), then gamma 1/2.2, then 8-bit rounding.
std::uint8_t tonemap_channel(double linear);
Rgb8 tonemap(Rgb32f linear);
Image<Rgb8> tonemap(const Image<Rgb32f>& linear);

/// Labels, depth and normals from one ray through each pixel center.
GroundtruthBundle render_groundtruth(const RenderScene& scene, const Camera& camera, int threads = 0);

/// Validates every input, then renders. Output does not depend on `threads`.
RenderOutput render(const RenderScene& scene, const Camera& camera, const Lighting& lighting, const Medium& medium,
                    const RenderConfig& config);

/// Sidecar key/value record describing one frame.
std::vector<std::pair<std::string, std::string>> render_metadata(const Camera& camera, const Lighting& lighting,
                                                                 const Medium& medium, const RenderConfig& config);

}  // namespace urbansim
