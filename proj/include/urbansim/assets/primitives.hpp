#pragma once

#include <vector>

#include "urbansim/assets/mesh.hpp"

namespace urbansim {

// Closed primitives are wound counter-clockwise seen from outside, so
// triangle_normal() points outward.

/// Quad a-b-c-d split into two triangles; uv = world (x, y).
Mesh make_quad(Vec3 a, Vec3 b, Vec3 c, Vec3 d, ClassId id);

/// Axis-aligned box with per-face vertices.
Mesh make_box(Vec3 lo, Vec3 hi, ClassId id);

/// One point of a revolution profile; radius 0 marks a pole.
struct ProfilePoint {
    double radius;
    double z;
};

/// Surface of revolution about +z of a profile ordered bottom to top.
Mesh make_revolution(const std::vector<ProfilePoint>& profile, int segments, ClassId id);

Mesh make_cylinder(double radius, double z0, double z1, int segments, ClassId id);
Mesh make_cone(double radius, double z0, double z1, int segments, ClassId id);
/// Cylinder with hemispherical ends spanning z0..z1.
Mesh make_capsule(double radius, double z0, double z1, int rings, int segments, ClassId id);
Mesh make_sphere(Vec3 center, double radius, int rings, int segments, ClassId id);

}  // namespace urbansim
