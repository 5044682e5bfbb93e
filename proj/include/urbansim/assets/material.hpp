#pragma once

#include <cstdint>
#include <optional>

#include "urbansim/core/math.hpp"

namespace urbansim {

enum class TextureKind : std::uint8_t { None, Checker, Stripe, ValueNoise };

/// Procedural texture evaluated at shade time from surface uv (meters).
/// The pattern value t in [0, 1] blends the base albedo toward `secondary`.
struct Texture {
    TextureKind kind = TextureKind::None;
    Rgb secondary;
    double period = 1.0;  ///< meters per pattern cell
    std::uint64_t seed = 0;

    double pattern(Vec2 uv) const;
    friend bool operator==(const Texture&, const Texture&) = default;
};

/// Binary specular activation map sampled on a texel grid: 1 inside a
/// rectangular window repeated every (period_u, period_v) meters, 0 elsewhere.
struct SpecularMask {
    double period_u = 3.0;
    double period_v = 3.0;
    double fill_u = 0.5;  ///< fraction of the period covered by the window
    double fill_v = 0.5;
    double texel = 0.25;  ///< texel size in meters

    int at(Vec2 uv) const;
    friend bool operator==(const SpecularMask&, const SpecularMask&) = default;
};

struct Material {
    Rgb albedo{0.5, 0.5, 0.5};
    double specular = 0.0;   ///< Cook-Torrance lobe weight in [0, 1]
    double roughness = 0.5;  ///< Beckmann slope rms in (0, 1]
    double f0 = 0.04;        ///< normal-incidence Fresnel reflectance
    Texture texture;
    std::optional<SpecularMask> specular_mask;  ///< absent: lobe active everywhere

    Rgb albedo_at(Vec2 uv) const;
    double mask_at(Vec2 uv) const { return specular_mask ? specular_mask->at(uv) : 1.0; }

    /// Throws std::invalid_argument if albedo leaves [0,1] or parameters are out of range.
    void validate() const;

    friend bool operator==(const Material&, const Material&) = default;
};

}  // namespace urbansim
