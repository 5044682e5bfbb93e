#include "urbansim/assets/primitives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urbansim {

double Mesh::triangle_area(std::size_t t) const { return 0.5 * length(triangle_normal(t)); }

Vec3 Mesh::triangle_normal(std::size_t t) const {
    const auto& tri = triangles[t];
    const Vec3 a = vertices[tri[0]];
    return cross(vertices[tri[1]] - a, vertices[tri[2]] - a);
}

void Mesh::append(const Mesh& other) {
    const auto base = static_cast<std::uint32_t>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    uvs.insert(uvs.end(), other.uvs.begin(), other.uvs.end());
    for (const auto& tri : other.triangles) triangles.push_back({tri[0] + base, tri[1] + base, tri[2] + base});
    classes.insert(classes.end(), other.classes.begin(), other.classes.end());
}

void Mesh::scale(double s) {
    for (Vec3& v : vertices) v = s * v;
}

void Mesh::set_class(ClassId id) { classes.assign(triangles.size(), id); }

void Mesh::validate() const {
    if (uvs.size() != vertices.size()) throw std::invalid_argument("Mesh: uv count differs from vertex count");
    if (classes.size() != triangles.size()) throw std::invalid_argument("Mesh: class count differs from triangle count");
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        for (std::uint32_t i : triangles[t])
            if (i >= vertices.size())
                throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " index out of range");
        if (!(triangle_area(t) > kMinTriangleArea))
            throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " is degenerate");
        if (!is_valid_class(static_cast<std::uint8_t>(classes[t])))
            throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " has invalid class id");
    }
}

namespace {

void add_quad(Mesh& m, Vec3 a, Vec3 b, Vec3 c, Vec3 d, Vec2 uva, Vec2 uvb, Vec2 uvc, Vec2 uvd, ClassId id) {
    const auto base = static_cast<std::uint32_t>(m.vertices.size());
    m.vertices.insert(m.vertices.end(), {a, b, c, d});
    m.uvs.insert(m.uvs.end(), {uva, uvb, uvc, uvd});
    m.triangles.push_back({base, base + 1, base + 2});
    m.triangles.push_back({base, base + 2, base + 3});
    m.classes.insert(m.classes.end(), {id, id});
}

}  // namespace

Mesh make_quad(Vec3 a, Vec3 b, Vec3 c, Vec3 d, ClassId id) {
    Mesh m;
    add_quad(m, a, b, c, d, {a.x, a.y}, {b.x, b.y}, {c.x, c.y}, {d.x, d.y}, id);
    return m;
}

Mesh make_box(Vec3 lo, Vec3 hi, ClassId id) {
    if (!(hi.x > lo.x && hi.y > lo.y && hi.z > lo.z)) throw std::invalid_argument("make_box: empty extent");
    Mesh m;
    const double w = hi.x - lo.x, d = hi.y - lo.y, h = hi.z - lo.z;
    // Each face counter-clockwise seen from outside; uv = (along face, up) in meters.
    add_quad(m, {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, lo.y, hi.z}, {lo.x, lo.y, hi.z},  // -y
             {0, 0}, {w, 0}, {w, h}, {0, h}, id);
    add_quad(m, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {hi.x, hi.y, hi.z}, {hi.x, lo.y, hi.z},  // +x
             {0, 0}, {d, 0}, {d, h}, {0, h}, id);
    add_quad(m, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z},  // +y
             {0, 0}, {w, 0}, {w, h}, {0, h}, id);
    add_quad(m, {lo.x, hi.y, lo.z}, {lo.x, lo.y, lo.z}, {lo.x, lo.y, hi.z}, {lo.x, hi.y, hi.z},  // -x
             {0, 0}, {d, 0}, {d, h}, {0, h}, id);
    add_quad(m, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z},  // +z
             {0, 0}, {w, 0}, {w, d}, {0, d}, id);
    add_quad(m, {lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z}, {hi.x, lo.y, lo.z}, {lo.x, lo.y, lo.z},  // -z
             {0, 0}, {w, 0}, {w, d}, {0, d}, id);
    return m;
}

Mesh make_revolution(const std::vector<ProfilePoint>& profile, int segments, ClassId id) {
    if (profile.size() < 2 || segments < 3) throw std::invalid_argument("make_revolution: profile too short");
    Mesh m;
    double rmax = 0.0;
    for (const auto& p : profile) rmax = std::fmax(rmax, p.radius);
    std::vector<double> arc(profile.size(), 0.0);
    for (std::size_t i = 1; i < profile.size(); ++i)
        arc[i] = arc[i - 1] + std::hypot(profile[i].radius - profile[i - 1].radius, profile[i].z - profile[i - 1].z);

    const auto cols = static_cast<std::uint32_t>(segments + 1);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        for (int j = 0; j <= segments; ++j) {
            const double phi = kTwoPi * j / segments;
            const int jj = j == segments ? 0 : j;  // seam vertices coincide exactly
            const double c = std::cos(kTwoPi * jj / segments);
            const double s = std::sin(kTwoPi * jj / segments);
            m.vertices.push_back({profile[i].radius * c, profile[i].radius * s, profile[i].z});
            m.uvs.push_back({phi * rmax, arc[i]});
        }
    }
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        const auto r0 = static_cast<std::uint32_t>(i) * cols;
        const auto r1 = r0 + cols;
        for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(segments); ++j) {
            if (profile[i].radius > 0.0) {
                m.triangles.push_back({r0 + j, r0 + j + 1, r1 + j + 1});
                m.classes.push_back(id);
            }
            if (profile[i + 1].radius > 0.0) {
                m.triangles.push_back({r0 + j, r1 + j + 1, r1 + j});
                m.classes.push_back(id);
            }
        }
    }
    return m;
}

Mesh make_cylinder(double radius, double z0, double z1, int segments, ClassId id) {
    return make_revolution({{0.0, z0}, {radius, z0}, {radius, z1}, {0.0, z1}}, segments, id);
}

Mesh make_cone(double radius, double z0, double z1, int segments, ClassId id) {
    return make_revolution({{0.0, z0}, {radius, z0}, {0.0, z1}}, segments, id);
}

Mesh make_capsule(double radius, double z0, double z1, int rings, int segments, ClassId id) {
    if (!(z1 - z0 >= 2.0 * radius)) throw std::invalid_argument("make_capsule: height below 2 * radius");
    std::vector<ProfilePoint> profile;
    profile.push_back({0.0, z0});
    for (int k = 1; k <= rings; ++k) {
        const double a = 0.5 * kPi * k / rings;
        profile.push_back({radius * std::sin(a), z0 + radius * (1.0 - std::cos(a))});
    }
    for (int k = rings - 1; k >= 0; --k) {
        const double a = 0.5 * kPi * k / rings;
        profile.push_back({radius * std::sin(a), z1 - radius * (1.0 - std::cos(a))});
    }
    return make_revolution(profile, segments, id);
}

Mesh make_sphere(Vec3 center, double radius, int rings, int segments, ClassId id) {
    std::vector<ProfilePoint> profile;
    for (int k = 0; k <= rings; ++k) {
        const double a = kPi * k / rings;
        profile.push_back({k == 0 || k == rings ? 0.0 : radius * std::sin(a), -radius * std::cos(a)});
    }
    Mesh m = make_revolution(profile, segments, id);
    for (Vec3& v : m.vertices) v += center;
    return m;
}

}  // namespace urbansim
