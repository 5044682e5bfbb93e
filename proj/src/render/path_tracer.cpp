#include "urbansim/render/path_tracer.hpp"

#include <cmath>
#include <limits>

namespace urbansim {

Vec3 sample_cosine_hemisphere(Vec3 n, double u1, double u2) {
    const double r = std::sqrt(u1);
    const double phi = kTwoPi * u2;
    const double z = std::sqrt(std::max(0.0, 1.0 - u1));
    return normalize(Frame(n).to_world({r * std::cos(phi), r * std::sin(phi), z}));
}

Vec3 sample_sun_direction(const SunLight& sun, double u1, double u2) {
    const Vec3 axis = sun.to_sun();
    if (sun.angular_radius <= 0.0) return axis;
    const double cos_max = std::cos(sun.angular_radius);
    const double cos_theta = 1.0 - u1 * (1.0 - cos_max);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = kTwoPi * u2;
    return normalize(Frame(axis).to_world({sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta}));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unoccluded sun radiance arriving at `origin` from `wl`, attenuated by the medium.
double sun_visibility(const RenderScene& scene, const Medium& medium, Vec3 origin, Vec3 wl) {
    const Ray shadow{origin, wl};
    if (scene.occluded(shadow)) return 0.0;
    return transmittance(medium, shadow, kInf);
}

}  // namespace

Rgb trace_path(const RenderScene& scene, const Medium& medium, const Lighting& lighting, Ray ray,
               const PathTracerSettings& settings, Pcg32& rng) {
    const SunLight& sun = lighting.sun;
    const bool fog = medium.active();
    const double sigma_t = medium.extinction();
    Rgb radiance;
    Rgb beta{1.0, 1.0, 1.0};

    for (int vertex = 1;; ++vertex) {
        const auto hit = scene.intersect(ray);
        const double t_surface = hit ? hit->t : kInf;

        if (fog) {
            const auto [t0, t1] = slab_interval(medium, ray, t_surface);
            if (t0 < t1) {
                const double ts = t0 - std::log1p(-rng.uniform()) / sigma_t;
                if (ts < t1) {
                    beta *= medium.scattering_coefficient / sigma_t;
                    const Vec3 p = ray.at(ts);
                    const double u1 = rng.uniform(), u2 = rng.uniform();
                    const Vec3 wl = sample_sun_direction(sun, u1, u2);
                    const double vis = sun_visibility(scene, medium, p, wl);
                    if (vis > 0.0) radiance += beta * sun.spectrum * (hg_phase(dot(ray.direction, wl), medium.anisotropy) * vis);
                    if (vertex >= settings.max_bounces) break;
                    if (vertex >= settings.rr_start_bounce) {
                        const double q = std::min(1.0, beta.max_component());
                        if (!(q > 0.0) || rng.uniform() >= q) break;
                        beta *= 1.0 / q;
                    }
                    const double v1 = rng.uniform(), v2 = rng.uniform();
                    ray = Ray{p, sample_hg(ray.direction, medium.anisotropy, v1, v2)};
                    continue;
                }
            }
        }

        if (!hit) {
            radiance += beta * lighting.sky;
            break;
        }

        const Material& material = scene.material(*hit);
        const Rgb albedo = material.albedo_at(hit->uv);
        const Vec3 origin = offset_origin(*hit);
        const double u1 = rng.uniform(), u2 = rng.uniform();
        const Vec3 wl = sample_sun_direction(sun, u1, u2);
        const double cos_l = dot(hit->normal, wl);
        if (cos_l > 0.0) {
            const double vis = sun_visibility(scene, medium, origin, wl);
            if (vis > 0.0) radiance += beta * (albedo * kInvPi) * sun.spectrum * (cos_l * vis);
        }
        if (vertex >= settings.max_bounces) break;
        beta *= albedo;
        if (vertex >= settings.rr_start_bounce) {
            const double q = std::min(1.0, albedo.max_component());
            if (!(q > 0.0) || rng.uniform() >= q) break;
            beta *= 1.0 / q;
        }
        const double v1 = rng.uniform(), v2 = rng.uniform();
        ray = Ray{origin, sample_cosine_hemisphere(hit->normal, v1, v2)};
    }
    return radiance;
}

}  // namespace urbansim
