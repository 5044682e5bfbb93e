#include "urbansim/assets/material.hpp"

#include <cmath>
#include <stdexcept>

#include "urbansim/core/rng.hpp"

namespace urbansim {

namespace {

double lattice_value(std::uint64_t seed, std::int64_t x, std::int64_t y) {
    const std::uint64_t h = hash_key({seed, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)});
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

double Texture::pattern(Vec2 uv) const {
    const double u = uv.x / period;
    const double v = uv.y / period;
    switch (kind) {
        case TextureKind::None:
            return 0.0;
        case TextureKind::Checker:
            return ((static_cast<std::int64_t>(std::floor(u)) + static_cast<std::int64_t>(std::floor(v))) & 1) ? 1.0
                                                                                                               : 0.0;
        case TextureKind::Stripe:
            return (static_cast<std::int64_t>(std::floor(v)) & 1) ? 1.0 : 0.0;
        case TextureKind::ValueNoise: {
            const double fu = std::floor(u), fv = std::floor(v);
            const auto x = static_cast<std::int64_t>(fu);
            const auto y = static_cast<std::int64_t>(fv);
            const double tu = smooth(u - fu), tv = smooth(v - fv);
            const double a = lattice_value(seed, x, y), b = lattice_value(seed, x + 1, y);
            const double c = lattice_value(seed, x, y + 1), d = lattice_value(seed, x + 1, y + 1);
            return (1 - tv) * ((1 - tu) * a + tu * b) + tv * ((1 - tu) * c + tu * d);
        }
    }
    return 0.0;
}

int SpecularMask::at(Vec2 uv) const {
    // Snap to the texel center.
    const double u = (std::floor(uv.x / texel) + 0.5) * texel;
    const double v = (std::floor(uv.y / texel) + 0.5) * texel;
    const double fu = u / period_u - std::floor(u / period_u);
    const double fv = v / period_v - std::floor(v / period_v);
    const double margin_u = 0.5 * (1.0 - fill_u);
    const double margin_v = 0.5 * (1.0 - fill_v);
    return (fu >= margin_u && fu < 1.0 - margin_u && fv >= margin_v && fv < 1.0 - margin_v) ? 1 : 0;
}

Rgb Material::albedo_at(Vec2 uv) const {
    if (texture.kind == TextureKind::None) return albedo;
    return lerp(albedo, texture.secondary, texture.pattern(uv));
}

void Material::validate() const {
    for (double c : {albedo.r, albedo.g, albedo.b, texture.secondary.r, texture.secondary.g, texture.secondary.b})
        if (!in_unit(c)) throw std::invalid_argument("Material: albedo components must lie in [0, 1]");
    if (!in_unit(specular)) throw std::invalid_argument("Material: specular coefficient must lie in [0, 1]");
    if (!(roughness > 0.0 && roughness <= 1.0)) throw std::invalid_argument("Material: roughness must lie in (0, 1]");
    if (!in_unit(f0)) throw std::invalid_argument("Material: f0 must lie in [0, 1]");
    if (!(texture.period > 0.0)) throw std::invalid_argument("Material: texture period must be positive");
}

}  // namespace urbansim
