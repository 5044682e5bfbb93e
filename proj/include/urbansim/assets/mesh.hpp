#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "urbansim/core/labels.hpp"
#include "urbansim/core/math.hpp"

namespace urbansim {

/// Indexed triangle mesh with one semantic class per triangle. `uvs` is
/// parallel to `vertices` and holds surface coordinates in meters.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Vec2> uvs;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<ClassId> classes;

    std::size_t triangle_count() const { return triangles.size(); }
    double triangle_area(std::size_t t) const;
    /// Unnormalized geometric normal following counter-clockwise winding.
    Vec3 triangle_normal(std::size_t t) const;

    void append(const Mesh& other);
    void scale(double s);
    void set_class(ClassId id);

    /// Throws std::invalid_argument on out-of-range indices, mismatched
    /// per-vertex/per-triangle arrays, or triangles with area <= 1e-12 m^2.
    void validate() const;

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

inline constexpr double kMinTriangleArea = 1e-12;

}  // namespace urbansim
