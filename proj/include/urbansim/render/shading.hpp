#pragma once

#include <cstdint>
#include <optional>

#include "urbansim/assets/world.hpp"
#include "urbansim/core/labels.hpp"
#include "urbansim/render/bvh.hpp"

namespace urbansim {

struct SunLight {
    Vec3 direction{0.0, 0.0, -1.0};  ///< direction the light travels, unit length
    Rgb spectrum{3.0, 3.0, 3.0};
    double angular_radius = 0.0;  ///< radians; 0 is an ideal directional light

    Vec3 to_sun() const { return -direction; }
    void validate() const;
};

/// Sun plus a uniform sky radiance seen by rays that escape the scene.
struct Lighting {
    SunLight sun;
    Rgb sky{0.6, 0.75, 1.0};

    void validate() const;
};

struct SurfaceHit {
    double t = 0.0;
    Vec3 position;
    Vec3 normal;  ///< unit geometric normal, flipped to face the incoming ray
    Vec2 uv;
    ClassId label = ClassId::Void;
    std::uint32_t material = 0;
    std::uint32_t triangle = 0;
};

/// Immutable world plus its acceleration structure.
class RenderScene {
public:
    explicit RenderScene(World world);

    std::optional<SurfaceHit> intersect(const Ray& ray) const;
    bool occluded(const Ray& ray) const { return bvh_.occluded(ray); }

    const World& world() const { return world_; }
    const Bvh& bvh() const { return bvh_; }
    const Material& material(const SurfaceHit& hit) const { return world_.materials[hit.material]; }

private:
    World world_;
    Bvh bvh_;
};

/// Offset origin for secondary rays leaving `hit` along its normal.
Vec3 offset_origin(const SurfaceHit& hit);

double fresnel_schlick(double f0, double cos_theta);
/// Beckmann distribution with rms slope m; cos_h is n.h.
double beckmann_d(double cos_h, double m);
/// Smith masking for Beckmann, rational approximation of Walter et al.
double smith_g1(double cos_v, double m);

/// (albedo/pi) * spectrum * max(0, n.(-d)). No shadow ray.
Rgb shade_lambertian(const SurfaceHit& hit, const Material& material, const SunLight& sun);
/// Lambertian plus specular * mask * D G F / (4 n.l n.v) * spectrum * n.l.
/// `view_dir` is the direction of the primary ray (toward the surface).
Rgb shade_cook_torrance(const SurfaceHit& hit, const Material& material, const SunLight& sun, Vec3 view_dir);

}  // namespace urbansim
