#pragma once

#include "urbansim/core/rng.hpp"
#include "urbansim/render/medium.hpp"
#include "urbansim/render/shading.hpp"

namespace urbansim {

struct PathTracerSettings {
    int max_bounces = 8;      ///< scattering vertices per path
    int rr_start_bounce = 3;  ///< roulette applies from this vertex on
};

/// Cosine-weighted direction about `n`.
Vec3 sample_cosine_hemisphere(Vec3 n, double u1, double u2);

/// Direction toward the sun; uniform within its cone when angular_radius > 0.
Vec3 sample_sun_direction(const SunLight& sun, double u1, double u2);

/// One radiance estimate along `ray`: diffuse surface bounces, next-event
/// estimation toward the sun with shadow rays, free-flight sampling through
/// the medium with Henyey-Greenstein scattering, and Russian roulette.
Rgb trace_path(const RenderScene& scene, const Medium& medium, const Lighting& lighting, Ray ray,
               const PathTracerSettings& settings, Pcg32& rng);

}  // namespace urbansim
