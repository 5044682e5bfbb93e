#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urbansim/assets/mesh.hpp"
#include "urbansim/render/camera.hpp"

namespace urbansim {

struct TriangleHit {
    double t = 0.0;
    std::uint32_t triangle = 0;
    double b1 = 0.0;  ///< barycentric weight of vertex 1
    double b2 = 0.0;  ///< barycentric weight of vertex 2
};

/// Bounding-volume hierarchy over a triangle mesh, built with binned SAH.
/// Triangle tests are Moller-Trumbore in double precision; a hit requires
/// tmin < t < tmax.
class Bvh {
public:
    explicit Bvh(const Mesh& mesh);

    std::optional<TriangleHit> intersect(const Ray& ray) const;
    bool occluded(const Ray& ray) const;

    /// Reference path testing every triangle; used by tests as an oracle.
    std::optional<TriangleHit> intersect_brute_force(const Ray& ray) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Tri {
        Vec3 v0, e1, e2;
    };
    struct Node {
        Vec3 lo, hi;
        std::uint32_t first = 0;  ///< first primitive (leaf) or right child (interior)
        std::uint32_t count = 0;  ///< 0 for interior nodes
        std::uint8_t axis = 0;
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end, std::vector<Vec3>& centroids);
    bool intersect_tri(std::uint32_t index, const Ray& ray, double tmax, TriangleHit& out) const;

    std::vector<Tri> tris_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace urbansim
