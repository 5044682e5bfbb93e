#include "urbansim/assets/catalog.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "urbansim/assets/primitives.hpp"
#include "urbansim/core/rng.hpp"

namespace urbansim {

namespace {

Rgb jitter(const Rgb& base, double amount, Pcg32& rng) {
    auto j = [&](double c) { return std::clamp(c * (1.0 + rng.uniform(-amount, amount)), 0.0, 1.0); };
    const double r = j(base.r);
    const double g = j(base.g);
    const double b = j(base.b);
    return {r, g, b};
}

template <std::size_t N>
const Rgb& pick(const std::array<Rgb, N>& palette, Pcg32& rng) {
    return palette[rng.bounded(static_cast<std::uint32_t>(N))];
}

Material styled(Material m, const AppearanceStyle& style) {
    auto tint = [&](Rgb c) {
        return Rgb{std::clamp(c.r * style.tint.r, 0.0, 1.0), std::clamp(c.g * style.tint.g, 0.0, 1.0),
                   std::clamp(c.b * style.tint.b, 0.0, 1.0)};
    };
    m.albedo = tint(m.albedo);
    m.texture.secondary = tint(m.texture.secondary);
    m.texture.period *= style.texture_period_scale;
    m.specular = std::clamp(m.specular * style.specular_scale, 0.0, 1.0);
    return m;
}

constexpr std::array<Rgb, 5> kFacades = {{{0.75, 0.68, 0.55}, {0.55, 0.30, 0.22}, {0.60, 0.60, 0.60},
                                          {0.85, 0.85, 0.82}, {0.38, 0.44, 0.52}}};
constexpr std::array<Rgb, 6> kPaints = {{{0.70, 0.08, 0.06}, {0.10, 0.20, 0.60}, {0.88, 0.88, 0.88},
                                         {0.05, 0.05, 0.05}, {0.60, 0.60, 0.62}, {0.85, 0.70, 0.10}}};
constexpr std::array<Rgb, 5> kClothes = {{{0.10, 0.10, 0.12}, {0.20, 0.25, 0.45}, {0.55, 0.15, 0.15},
                                          {0.70, 0.65, 0.55}, {0.25, 0.40, 0.25}}};

AssetEntry make_entry(Category c, int index, Pcg32& rng) {
    AssetEntry e;
    e.category = c;
    e.variant = static_cast<int>(rng.bounded(3));
    Material& m = e.material;
    switch (c) {
        case Category::Building: {
            e.dims = {rng.uniform(8.0, 16.0), rng.uniform(8.0, 16.0), rng.uniform(8.0, 30.0), rng.uniform(0.6, 0.8)};
            m.albedo = jitter(pick(kFacades, rng), 0.1, rng);
            m.texture.kind = std::array{TextureKind::Stripe, TextureKind::Checker, TextureKind::ValueNoise}[index % 3];
            m.texture.secondary = 0.7 * m.albedo;
            m.texture.period = rng.uniform(1.5, 3.5);
            m.specular = 0.5;
            m.roughness = 0.15;
            m.specular_mask = SpecularMask{rng.uniform(2.5, 4.0), rng.uniform(3.0, 3.6), 0.5, 0.45, 0.25};
            break;
        }
        case Category::Tree: {
            e.dims = {rng.uniform(0.15, 0.3), rng.uniform(1.5, 3.0), rng.uniform(1.2, 2.8), rng.uniform(3.0, 6.0)};
            m.albedo = jitter({0.16, 0.34, 0.10}, 0.2, rng);
            m.texture = {TextureKind::ValueNoise, 0.5 * m.albedo, rng.uniform(0.4, 1.0), rng.next_u32()};
            m.roughness = 0.8;
            break;
        }
        case Category::Vehicle: {
            e.dims = {rng.uniform(3.8, 4.8), rng.uniform(1.6, 1.9), rng.uniform(0.7, 0.9), rng.uniform(0.6, 0.8)};
            m.albedo = jitter(pick(kPaints, rng), 0.05, rng);
            m.specular = 0.4;
            m.roughness = 0.2;
            break;
        }
        case Category::Pedestrian: {
            e.dims = {rng.uniform(0.2, 0.28), rng.uniform(1.6, 1.9), 0.0, 0.0};
            m.albedo = jitter(pick(kClothes, rng), 0.15, rng);
            m.texture = {TextureKind::ValueNoise, 0.6 * m.albedo, 0.3, rng.next_u32()};
            m.roughness = 0.9;
            break;
        }
    }
    return e;
}

void check_category(Category c) {
    if (static_cast<int>(c) >= kNumCategories)
        throw std::invalid_argument("unknown object category " + std::to_string(static_cast<int>(c)));
}

Mesh procedural_mesh(const AssetEntry& e) {
    const ClassId id = class_of(e.category);
    const auto& d = e.dims;
    switch (e.category) {
        case Category::Building: {
            const double hw = 0.5 * d[0], hd = 0.5 * d[1], h = d[2];
            if (e.variant == 0) return make_box({-hw, -hd, 0.0}, {hw, hd, h}, id);
            // Setback tower: lower block plus a narrower upper block.
            const double split = (e.variant == 1 ? 0.6 : 0.75) * h;
            Mesh m = make_box({-hw, -hd, 0.0}, {hw, hd, split}, id);
            m.append(make_box({-d[3] * hw, -d[3] * hd, split}, {d[3] * hw, d[3] * hd, h}, id));
            return m;
        }
        case Category::Tree: {
            const double trunk_r = d[0], trunk_h = d[1], crown_r = d[2], crown_h = d[3];
            Mesh m = make_cylinder(trunk_r, 0.0, trunk_h, 8, id);
            m.append(make_cone(crown_r, trunk_h * 0.85, trunk_h * 0.85 + crown_h, 12, id));
            if (e.variant == 2) m.append(make_cone(0.75 * crown_r, trunk_h * 0.85 + 0.45 * crown_h,
                                                   trunk_h * 0.85 + 1.2 * crown_h, 12, id));
            return m;
        }
        case Category::Vehicle: {
            const double hl = 0.5 * d[0], hw = 0.5 * d[1], body_h = d[2], clearance = 0.3;
            Mesh m = make_box({-hl, -hw, clearance}, {hl, hw, clearance + body_h}, id);
            const double cabin_l = hl * d[3];
            const double shift = e.variant == 1 ? -0.15 * hl : 0.0;
            m.append(make_box({-cabin_l + shift, -0.9 * hw, clearance + body_h},
                              {cabin_l * 0.8 + shift, 0.9 * hw, clearance + body_h + 0.65}, id));
            return m;
        }
        case Category::Pedestrian: {
            const double r = d[0], h = d[1];
            Mesh m = make_capsule(r, 0.0, h - 0.24, 3, 8, id);
            m.append(make_sphere({0.0, 0.0, h - 0.12}, 0.12, 4, 8, id));
            return m;
        }
    }
    throw std::invalid_argument("unknown object category");
}

}  // namespace

AssetCatalog AssetCatalog::procedural(const std::array<int, kNumCategories>& counts, std::uint64_t seed,
                                      const AppearanceStyle& style) {
    AssetCatalog cat;
    for (Category c : kAllCategories) {
        const int n = counts[index_of(c)];
        if (n < 0) throw std::invalid_argument("AssetCatalog: negative asset count");
        for (int i = 0; i < n; ++i) {
            Pcg32 rng(hash_key({seed, style.palette_seed, static_cast<std::uint64_t>(index_of(c)),
                                static_cast<std::uint64_t>(i)}),
                      static_cast<std::uint64_t>(RngStream::Catalog));
            AssetEntry e = make_entry(c, i, rng);
            e.material = styled(e.material, style);
            cat.entries_[index_of(c)].push_back(std::move(e));
        }
    }
    Pcg32 rng(hash_key({seed, style.palette_seed, 0xfeedULL}), static_cast<std::uint64_t>(RngStream::Catalog));
    cat.ground_.albedo = jitter({0.36, 0.34, 0.30}, 0.05, rng);
    cat.ground_.texture = {TextureKind::ValueNoise, {0.28, 0.30, 0.22}, 2.0, rng.next_u32()};
    cat.ground_.roughness = 0.9;
    cat.road_.albedo = jitter({0.16, 0.16, 0.17}, 0.05, rng);
    cat.road_.texture = {TextureKind::ValueNoise, {0.22, 0.22, 0.22}, 0.5, rng.next_u32()};
    cat.road_.roughness = 0.7;
    cat.ground_ = styled(cat.ground_, style);
    cat.road_ = styled(cat.road_, style);
    return cat;
}

int AssetCatalog::count(Category c) const {
    check_category(c);
    return static_cast<int>(entries_[index_of(c)].size());
}

const AssetEntry& AssetCatalog::entry(Category c, int index) const {
    check_category(c);
    const auto& list = entries_[index_of(c)];
    if (index < 0 || index >= static_cast<int>(list.size()))
        throw std::out_of_range("no asset " + std::to_string(index) + " for category '" + std::string(name_of(c)) +
                                "' (" + std::to_string(list.size()) + " available)");
    return list[index];
}

int AssetCatalog::add_imported(Category c, Mesh mesh, Material material) {
    check_category(c);
    mesh.validate();
    material.validate();
    AssetEntry e;
    e.category = c;
    e.material = std::move(material);
    e.imported = std::move(mesh);
    entries_[index_of(c)].push_back(std::move(e));
    return static_cast<int>(entries_[index_of(c)].size()) - 1;
}

std::pair<Mesh, Material> build_asset(const AssetCatalog& catalog, Category category, int asset_index, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("build_asset: scale must be positive");
    const AssetEntry& e = catalog.entry(category, asset_index);
    Mesh m = e.imported ? *e.imported : procedural_mesh(e);
    m.scale(scale);
    return {std::move(m), e.material};
}

}  // namespace urbansim
