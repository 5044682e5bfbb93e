#include "urbansim/render/bvh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace urbansim {

namespace {

constexpr int kBins = 12;
constexpr std::uint32_t kLeafSize = 4;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
    Vec3 lo{kInf, kInf, kInf};
    Vec3 hi{-kInf, -kInf, -kInf};
    void grow(Vec3 p) {
        lo = min(lo, p);
        hi = max(hi, p);
    }
    void grow(const Box& b) {
        lo = min(lo, b.lo);
        hi = max(hi, b.hi);
    }
    double area() const {
        const Vec3 d = hi - lo;
        if (d.x < 0) return 0.0;
        return 2.0 * (d.x * d.y + d.y * d.z + d.z * d.x);
    }
};

bool hit_box(const Vec3& lo, const Vec3& hi, const Ray& ray, const Vec3& inv, double tmax) {
    double t0 = ray.tmin, t1 = tmax;
    for (int a = 0; a < 3; ++a) {
        double tn = (lo[a] - ray.origin[a]) * inv[a];
        double tf = (hi[a] - ray.origin[a]) * inv[a];
        if (tn > tf) std::swap(tn, tf);
        // fmax/fmin drop the NaN produced by 0 * inf on slab planes.
        t0 = std::fmax(t0, tn);
        t1 = std::fmin(t1, tf * (1.0 + 4e-16));
        if (t0 > t1) return false;
    }
    return true;
}

Vec3 inverse(Vec3 d) { return {1.0 / d.x, 1.0 / d.y, 1.0 / d.z}; }

}  // namespace

Bvh::Bvh(const Mesh& mesh) {
    tris_.reserve(mesh.triangles.size());
    std::vector<Vec3> centroids;
    centroids.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const Vec3 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        tris_.push_back({a, b - a, c - a});
        centroids.push_back((a + b + c) / 3.0);
    }
    order_.resize(tris_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    if (!tris_.empty()) {
        nodes_.reserve(2 * tris_.size());
        build(0, static_cast<std::uint32_t>(tris_.size()), centroids);
    }
}

std::uint32_t Bvh::build(std::uint32_t begin, std::uint32_t end, std::vector<Vec3>& centroids) {
    const auto node_index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Box bounds, cbounds;
    for (std::uint32_t i = begin; i < end; ++i) {
        const Tri& t = tris_[order_[i]];
        bounds.grow(t.v0);
        bounds.grow(t.v0 + t.e1);
        bounds.grow(t.v0 + t.e2);
        cbounds.grow(centroids[order_[i]]);
    }
    nodes_[node_index].lo = bounds.lo;
    nodes_[node_index].hi = bounds.hi;

    const std::uint32_t n = end - begin;
    auto make_leaf = [&] {
        nodes_[node_index].first = begin;
        nodes_[node_index].count = n;
        return node_index;
    };
    if (n <= kLeafSize) return make_leaf();

    // Binned SAH over the centroid extent on each axis.
    double best_cost = kInf;
    int best_axis = -1, best_split = 0;
    for (int axis = 0; axis < 3; ++axis) {
        const double extent = cbounds.hi[axis] - cbounds.lo[axis];
        if (!(extent > 0.0)) continue;
        std::array<Box, kBins> boxes;
        std::array<std::uint32_t, kBins> counts{};
        for (std::uint32_t i = begin; i < end; ++i) {
            const int b = std::min(kBins - 1, static_cast<int>(kBins * (centroids[order_[i]][axis] - cbounds.lo[axis]) / extent));
            const Tri& t = tris_[order_[i]];
            boxes[b].grow(t.v0);
            boxes[b].grow(t.v0 + t.e1);
            boxes[b].grow(t.v0 + t.e2);
            ++counts[b];
        }
        std::array<double, kBins> left_area{}, right_area{};
        std::array<std::uint32_t, kBins> left_count{}, right_count{};
        Box acc;
        std::uint32_t c = 0;
        for (int b = 0; b < kBins; ++b) {
            acc.grow(boxes[b]);
            c += counts[b];
            left_area[b] = acc.area();
            left_count[b] = c;
        }
        acc = Box{};
        c = 0;
        for (int b = kBins - 1; b >= 0; --b) {
            acc.grow(boxes[b]);
            c += counts[b];
            right_area[b] = acc.area();
            right_count[b] = c;
        }
        for (int s = 0; s < kBins - 1; ++s) {
            if (left_count[s] == 0 || right_count[s + 1] == 0) continue;
            const double cost = left_area[s] * left_count[s] + right_area[s + 1] * right_count[s + 1];
            if (cost < best_cost) {
                best_cost = cost;
                best_axis = axis;
                best_split = s;
            }
        }
    }

    std::uint32_t mid;
    if (best_axis < 0 || best_cost >= bounds.area() * n) {
        if (best_axis < 0 && n <= 4 * kLeafSize) return make_leaf();
        // Degenerate centroids or no profitable split: median on the widest axis.
        const Vec3 d = cbounds.hi - cbounds.lo;
        const int axis = d.x > d.y ? (d.x > d.z ? 0 : 2) : (d.y > d.z ? 1 : 2);
        mid = begin + n / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::uint32_t a, std::uint32_t b) {
                             if (centroids[a][axis] != centroids[b][axis]) return centroids[a][axis] < centroids[b][axis];
                             return a < b;
                         });
        nodes_[node_index].axis = static_cast<std::uint8_t>(axis);
    } else {
        const double extent = cbounds.hi[best_axis] - cbounds.lo[best_axis];
        auto it = std::partition(order_.begin() + begin, order_.begin() + end, [&](std::uint32_t i) {
            const int b = std::min(kBins - 1, static_cast<int>(kBins * (centroids[i][best_axis] - cbounds.lo[best_axis]) / extent));
            return b <= best_split;
        });
        mid = static_cast<std::uint32_t>(it - order_.begin());
        nodes_[node_index].axis = static_cast<std::uint8_t>(best_axis);
    }

    build(begin, mid, centroids);  // left child is node_index + 1
    const std::uint32_t right = build(mid, end, centroids);
    nodes_[node_index].first = right;
    nodes_[node_index].count = 0;
    return node_index;
}

bool Bvh::intersect_tri(std::uint32_t index, const Ray& ray, double tmax, TriangleHit& out) const {
    const Tri& tri = tris_[index];
    const Vec3 p = cross(ray.direction, tri.e2);
    const double det = dot(tri.e1, p);
    if (det == 0.0) return false;
    const double inv_det = 1.0 / det;
    const Vec3 s = ray.origin - tri.v0;
    const double b1 = dot(s, p) * inv_det;
    if (b1 < 0.0 || b1 > 1.0) return false;
    const Vec3 q = cross(s, tri.e1);
    const double b2 = dot(ray.direction, q) * inv_det;
    if (b2 < 0.0 || b1 + b2 > 1.0) return false;
    const double t = dot(tri.e2, q) * inv_det;
    if (!(t > ray.tmin && t < tmax)) return false;
    out = {t, index, b1, b2};
    return true;
}

std::optional<TriangleHit> Bvh::intersect(const Ray& ray) const {
    if (nodes_.empty()) return std::nullopt;
    const Vec3 inv = inverse(ray.direction);
    std::array<std::uint32_t, 64> stack;
    int sp = 0;
    stack[sp++] = 0;
    TriangleHit best;
    bool found = false;
    double tmax = ray.tmax;
    while (sp > 0) {
        const Node& node = nodes_[stack[--sp]];
        if (!hit_box(node.lo, node.hi, ray, inv, tmax)) continue;
        if (node.count > 0) {
            for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
                TriangleHit h;
                if (intersect_tri(order_[i], ray, found ? std::nextafter(tmax, kInf) : tmax, h)) {
                    // Equal distances resolve to the lowest triangle index, matching brute force.
                    if (!found || h.t < best.t || (h.t == best.t && h.triangle < best.triangle)) best = h;
                    found = true;
                    tmax = best.t;
                }
            }
            continue;
        }
        const auto self = static_cast<std::uint32_t>(&node - nodes_.data());
        const std::uint32_t left = self + 1, right = node.first;
        if (ray.direction[node.axis] < 0.0) {
            stack[sp++] = left;
            stack[sp++] = right;
        } else {
            stack[sp++] = right;
            stack[sp++] = left;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

bool Bvh::occluded(const Ray& ray) const {
    if (nodes_.empty()) return false;
    const Vec3 inv = inverse(ray.direction);
    std::array<std::uint32_t, 64> stack;
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
        const Node& node = nodes_[stack[--sp]];
        if (!hit_box(node.lo, node.hi, ray, inv, ray.tmax)) continue;
        if (node.count > 0) {
            TriangleHit h;
            for (std::uint32_t i = node.first; i < node.first + node.count; ++i)
                if (intersect_tri(order_[i], ray, ray.tmax, h)) return true;
            continue;
        }
        const auto self = static_cast<std::uint32_t>(&node - nodes_.data());
        stack[sp++] = node.first;
        stack[sp++] = self + 1;
    }
    return false;
}

std::optional<TriangleHit> Bvh::intersect_brute_force(const Ray& ray) const {
    TriangleHit best;
    bool found = false;
    for (std::uint32_t i = 0; i < tris_.size(); ++i) {
        TriangleHit h;
        if (intersect_tri(i, ray, found ? std::nextafter(best.t, kInf) : ray.tmax, h) && (!found || h.t < best.t)) {
            best = h;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

}  // namespace urbansim
