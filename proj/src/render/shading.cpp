#include "urbansim/render/shading.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urbansim {

void SunLight::validate() const {
    if (!(std::abs(1.0 - length(direction)) < 1e-9)) throw std::invalid_argument("SunLight: direction must be unit length");
    if (!(spectrum.r >= 0 && spectrum.g >= 0 && spectrum.b >= 0) || !spectrum.is_finite())
        throw std::invalid_argument("SunLight: spectrum must be finite and non-negative");
    if (!(angular_radius >= 0.0 && angular_radius < 0.5 * kPi))
        throw std::invalid_argument("SunLight: angular_radius must lie in [0, pi/2)");
}

void Lighting::validate() const {
    sun.validate();
    if (!(sky.r >= 0 && sky.g >= 0 && sky.b >= 0) || !sky.is_finite())
        throw std::invalid_argument("Lighting: sky radiance must be finite and non-negative");
}

RenderScene::RenderScene(World world) : world_(std::move(world)), bvh_(world_.mesh) {
    if (world_.triangle_material.size() != world_.mesh.triangles.size())
        throw std::invalid_argument("RenderScene: triangle/material count mismatch");
    for (auto m : world_.triangle_material)
        if (m >= world_.materials.size()) throw std::invalid_argument("RenderScene: material index out of range");
}

std::optional<SurfaceHit> RenderScene::intersect(const Ray& ray) const {
    const auto h = bvh_.intersect(ray);
    if (!h) return std::nullopt;
    const Mesh& mesh = world_.mesh;
    const auto& tri = mesh.triangles[h->triangle];
    SurfaceHit out;
    out.t = h->t;
    out.position = ray.at(h->t);
    Vec3 n = normalize(mesh.triangle_normal(h->triangle));
    if (dot(n, ray.direction) > 0.0) n = -n;
    out.normal = n;
    const double b0 = 1.0 - h->b1 - h->b2;
    const Vec2 a = mesh.uvs[tri[0]], b = mesh.uvs[tri[1]], c = mesh.uvs[tri[2]];
    out.uv = {b0 * a.x + h->b1 * b.x + h->b2 * c.x, b0 * a.y + h->b1 * b.y + h->b2 * c.y};
    out.label = mesh.classes[h->triangle];
    out.material = world_.triangle_material[h->triangle];
    out.triangle = h->triangle;
    return out;
}

Vec3 offset_origin(const SurfaceHit& hit) {
    const Vec3& p = hit.position;
    const double scale = 1.0 + std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    return p + (1e-7 * scale) * hit.normal;
}

double fresnel_schlick(double f0, double cos_theta) {
    const double c = std::clamp(1.0 - cos_theta, 0.0, 1.0);
    const double c2 = c * c;
    return f0 + (1.0 - f0) * c2 * c2 * c;
}

double beckmann_d(double cos_h, double m) {
    if (cos_h <= 0.0) return 0.0;
    const double c2 = cos_h * cos_h;
    const double tan2 = (1.0 - c2) / c2;
    return std::exp(-tan2 / (m * m)) / (kPi * m * m * c2 * c2);
}

double smith_g1(double cos_v, double m) {
    if (cos_v <= 0.0) return 0.0;
    const double sin_v = std::sqrt(std::max(0.0, 1.0 - cos_v * cos_v));
    if (sin_v == 0.0) return 1.0;
    const double a = cos_v / (m * sin_v);
    if (a >= 1.6) return 1.0;
    return (3.535 * a + 2.181 * a * a) / (1.0 + 2.276 * a + 2.577 * a * a);
}

Rgb shade_lambertian(const SurfaceHit& hit, const Material& material, const SunLight& sun) {
    const double cos_l = std::max(0.0, dot(hit.normal, -sun.direction));
    return (material.albedo_at(hit.uv) * kInvPi) * sun.spectrum * cos_l;
}

Rgb shade_cook_torrance(const SurfaceHit& hit, const Material& material, const SunLight& sun, Vec3 view_dir) {
    const Rgb diffuse = shade_lambertian(hit, material, sun);
    const double weight = material.specular * material.mask_at(hit.uv);
    if (weight == 0.0) return diffuse;
    const Vec3 l = -sun.direction;
    const Vec3 v = -view_dir;
    const double nl = dot(hit.normal, l);
    const double nv = dot(hit.normal, v);
    if (nl <= 0.0 || nv <= 0.0) return diffuse;
    const Vec3 h = normalize(l + v);
    const double m = material.roughness;
    const double d = beckmann_d(dot(hit.normal, h), m);
    const double g = smith_g1(nl, m) * smith_g1(nv, m);
    const double f = fresnel_schlick(material.f0, dot(v, h));
    const double spec = weight * d * g * f / (4.0 * nl * nv) * nl;
    return diffuse + sun.spectrum * spec;
}

}  // namespace urbansim
