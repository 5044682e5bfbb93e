#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "test_support.hpp"
#include "urbansim/assets/primitives.hpp"
#include "urbansim/core/math.hpp"
#include "urbansim/render/image_io.hpp"
#include "urbansim/render/renderer.hpp"

using namespace urbansim;
using namespace urbansim::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

World street_world() {
    World w = ground_world(60.0, 0.4);
    w.add(make_box({4, -3, 0}, {9, 3, 7}, ClassId::Building), diffuse(0.6));
    w.add(make_sphere({3, 4, 1.2}, 1.2, 8, 12, ClassId::Tree), diffuse(0.3));
    Material glass = diffuse(0.2);
    glass.specular = 0.8;
    glass.roughness = 0.2;
    w.add(make_box({2, -5, 0}, {3.5, -4, 1.5}, ClassId::Vehicle), glass);
    return w;
}

Camera street_camera(int size = 32) {
    Camera c;
    c.position = {-6, 0, 1.6};
    c.look_at = {4, 0, 1.6};
    c.width = size;
    c.height = size;
    return c;
}

Lighting oblique_sun() {
    Lighting l;
    l.sun.direction = normalize(Vec3{0.4, 0.3, -0.85});
    return l;
}

SurfaceHit up_hit() {
    SurfaceHit h;
    h.t = 1.0;
    h.normal = {0, 0, 1};
    h.label = ClassId::Ground;
    return h;
}

}  // namespace

TEST(Bvh, GroundPlaneHitMatchesClosedForm) {
    const RenderScene scene(ground_world());
    Pcg32 rng(1, 1);
    for (int i = 0; i < 500; ++i) {
        const Vec3 o{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(0.1, 30)};
        const Vec3 d = normalize(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), -rng.uniform(0.05, 1)});
        const auto hit = scene.intersect({o, d});
        ASSERT_TRUE(hit);
        EXPECT_NEAR(hit->t, -o.z / d.z, 1e-9);
        EXPECT_NEAR(hit->position.z, 0.0, 1e-9);
        EXPECT_EQ(hit->normal, (Vec3{0, 0, 1}));
        EXPECT_EQ(hit->label, ClassId::Ground);
    }
}

TEST(Bvh, RayPointingAwayMisses) {
    const RenderScene scene(street_world());
    EXPECT_FALSE(scene.intersect({{0, 0, 10}, {0, 0, 1}}));
    EXPECT_FALSE(scene.occluded({{0, 0, 10}, {0, 0, 1}}));
}

TEST(Bvh, NormalFacesIncomingRay) {
    const RenderScene scene(ground_world());
    const auto hit = scene.intersect({{0, 0, -5}, {0, 0, 1}});
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->normal, (Vec3{0, 0, -1}));
}

TEST(Bvh, MatchesBruteForceOnRandomRays) {
    const World w = street_world();
    const Bvh bvh(w.mesh);
    EXPECT_GT(bvh.node_count(), 1u);
    Pcg32 rng(2, 2);
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 o{rng.uniform(-10, 12), rng.uniform(-8, 8), rng.uniform(0.05, 10)};
        const Vec3 d = normalize(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const Ray ray{o, d};
        const auto a = bvh.intersect(ray);
        const auto b = bvh.intersect_brute_force(ray);
        ASSERT_EQ(a.has_value(), b.has_value()) << "ray " << i;
        EXPECT_EQ(bvh.occluded(ray), b.has_value());
        if (!a) continue;
        ++hits;
        EXPECT_EQ(a->t, b->t);
        EXPECT_EQ(a->triangle, b->triangle);
    }
    EXPECT_GT(hits, 300);
}

TEST(Bvh, RespectsRayInterval) {
    const RenderScene scene(ground_world());
    EXPECT_FALSE(scene.intersect({{0, 0, 5}, {0, 0, -1}, 0.0, 4.0}));
    EXPECT_TRUE(scene.intersect({{0, 0, 5}, {0, 0, -1}, 0.0, 6.0}));
    EXPECT_FALSE(scene.intersect({{0, 0, 5}, {0, 0, -1}, 5.5, kInf}));
}

TEST(Camera, CenterRayFollowsViewDirection) {
    Camera c = street_camera(64);
    const PinholeCamera cam(c);
    const Ray r = cam.generate(32, 32);
    EXPECT_NEAR(r.direction.x, 1.0, 1e-12);
    EXPECT_NEAR(r.direction.y, 0.0, 1e-12);
    EXPECT_NEAR(r.direction.z, 0.0, 1e-12);
    EXPECT_NEAR(length(r.direction), 1.0, 1e-12);
    const Ray corner = cam.generate(0, 0);
    EXPECT_GT(corner.direction.z, 0.0);   // top row looks up
    EXPECT_GT(corner.direction.y, 0.0);   // left column looks toward +y for a +x view
    EXPECT_NEAR(std::atan2(corner.direction.z, corner.direction.x), c.vertical_fov / 2, 1e-3 + 0.2);
    const Ray top = cam.generate(32, 0);
    EXPECT_NEAR(std::atan2(top.direction.z, top.direction.x), c.vertical_fov / 2, 1e-12);
}

TEST(Camera, ValidationRejectsBadParameters) {
    Camera c = street_camera();
    EXPECT_NO_THROW(c.validate());
    Camera bad = c;
    bad.vertical_fov = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad.vertical_fov = kPi;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = c;
    bad.width = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = c;
    bad.look_at = bad.position;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = c;
    bad.look_at = bad.position + Vec3{0, 0, -3};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Lambertian, PerpendicularLightGivesZero) {
    SunLight sun;
    sun.direction = {1, 0, 0};
    const Rgb c = shade_lambertian(up_hit(), diffuse(0.8), sun);
    EXPECT_EQ(c, (Rgb{0, 0, 0}));
}

TEST(Lambertian, UnitAlbedoAndPiSpectrumGiveOne) {
    SunLight sun;
    sun.direction = {0, 0, -1};
    sun.spectrum = {kPi, kPi, kPi};
    const Rgb c = shade_lambertian(up_hit(), diffuse(1.0), sun);
    EXPECT_NEAR(c.r, 1.0, 1e-15);
    EXPECT_NEAR(c.g, 1.0, 1e-15);
    EXPECT_NEAR(c.b, 1.0, 1e-15);
}

TEST(Lambertian, LinearInSpectrumAndCosine) {
    SunLight sun;
    sun.direction = normalize(Vec3{0.3, 0.2, -0.7});
    sun.spectrum = {1.0, 2.0, 0.5};
    const Rgb a = shade_lambertian(up_hit(), diffuse(0.5), sun);
    sun.spectrum = {2.0, 4.0, 1.0};
    const Rgb b = shade_lambertian(up_hit(), diffuse(0.5), sun);
    EXPECT_DOUBLE_EQ(b.r, 2 * a.r);
    EXPECT_DOUBLE_EQ(b.g, 2 * a.g);
    EXPECT_DOUBLE_EQ(b.b, 2 * a.b);
    EXPECT_NEAR(a.r, 0.5 / kPi * 1.0 * 0.7 / length(Vec3{0.3, 0.2, -0.7}), 1e-15);
    sun.direction = {0, 0, 1};  // from below
    EXPECT_EQ(shade_lambertian(up_hit(), diffuse(0.5), sun), (Rgb{0, 0, 0}));
}

TEST(CookTorrance, ZeroSpecularEqualsLambertianBitwise) {
    Pcg32 rng(3, 3);
    for (int i = 0; i < 200; ++i) {
        SunLight sun;
        sun.direction = normalize(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), -rng.uniform(0.01, 1)});
        Material m = diffuse(rng.uniform());
        m.roughness = rng.uniform(0.05, 1);
        const Vec3 view = normalize(Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), -rng.uniform(0.01, 1)});
        EXPECT_EQ(shade_cook_torrance(up_hit(), m, sun, view), shade_lambertian(up_hit(), m, sun));
    }
}

TEST(CookTorrance, MaskedTexelEqualsLambertianAndUnmaskedAddsHighlight) {
    SunLight sun;
    sun.direction = normalize(Vec3{1, 0, -1});
    Material m = diffuse(0.3);
    m.specular = 1.0;
    m.roughness = 0.2;
    m.specular_mask = SpecularMask{};
    const Vec3 mirror_view = normalize(Vec3{-1, 0, -1});
    SurfaceHit h = up_hit();
    h.uv = {0.1, 0.1};  // window covers the middle half of each 3 m period
    ASSERT_EQ(m.mask_at(h.uv), 0.0);
    EXPECT_EQ(shade_cook_torrance(h, m, sun, mirror_view), shade_lambertian(h, m, sun));
    h.uv = {1.5, 1.5};
    ASSERT_EQ(m.mask_at(h.uv), 1.0);
    EXPECT_GT(shade_cook_torrance(h, m, sun, mirror_view).r, shade_lambertian(h, m, sun).r * 2);
}

TEST(CookTorrance, SchlickIsOneAtGrazingAndF0AtNormal) {
    EXPECT_EQ(fresnel_schlick(0.04, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(fresnel_schlick(0.04, 1.0), 0.04);
    EXPECT_NEAR(fresnel_schlick(0.04, 0.5), 0.04 + 0.96 * std::pow(0.5, 5), 1e-15);
}

TEST(CookTorrance, BeckmannIntegratesToOneOverProjectedHemisphere) {
    for (double m : {0.1, 0.3, 0.7}) {
        const int n = 20000;
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            const double theta = (i + 0.5) / n * (kPi / 2);
            const double c = std::cos(theta);
            sum += beckmann_d(c, m) * c * std::sin(theta);
        }
        EXPECT_NEAR(sum * (kPi / 2) / n * kTwoPi, 1.0, 2e-3) << "m=" << m;
    }
    for (double c : {0.1, 0.5, 1.0}) {
        EXPECT_GT(smith_g1(c, 0.3), 0.0);
        EXPECT_LE(smith_g1(c, 0.3), 1.0);
    }
    EXPECT_EQ(smith_g1(1.0, 0.3), 1.0);
}

TEST(PathTracer, SingleBounceOnOpenPlaneEqualsLambertianForIdealSun) {
    const RenderScene scene(ground_world());
    Lighting l = oblique_sun();
    const Ray ray{{0, 0, 3}, normalize(Vec3{0.2, 0.1, -1})};
    const auto hit = scene.intersect(ray);
    ASSERT_TRUE(hit);
    const Rgb expected = shade_lambertian(*hit, scene.material(*hit), l.sun);
    Pcg32 rng(4, 4);
    for (int i = 0; i < 50; ++i) {
        const Rgb c = trace_path(scene, Medium{}, l, ray, {1, 3}, rng);
        EXPECT_NEAR(c.r, expected.r, 1e-14);
        EXPECT_NEAR(c.b, expected.b, 1e-14);
    }
}

TEST(PathTracer, SingleBounceSoftSunMatchesConeAverageWithinNoise) {
    const RenderScene scene(ground_world());
    Lighting l = oblique_sun();
    l.sun.angular_radius = 0.2;
    const Ray ray{{0, 0, 3}, {0, 0, -1}};
    const double cos_axis = dot(Vec3{0, 0, 1}, l.sun.to_sun());
    const double expected = 0.5 * kInvPi * l.sun.spectrum.r * cos_axis * (1 + std::cos(0.2)) / 2;
    Pcg32 rng(5, 5);
    const int n = 20000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        const double v = trace_path(scene, Medium{}, l, ray, {1, 3}, rng).r;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_GT(se, 0.0);
    EXPECT_LE(std::abs(mean - expected), 3 * se) << mean << " vs " << expected;
}

TEST(PathTracer, FurnaceSphereReflectsAlbedo) {
    World w;
    w.add(make_sphere({0, 0, 0}, 1.0, 24, 48, ClassId::Tree), diffuse(0.5));
    const RenderScene scene(std::move(w));
    Lighting l;
    l.sun.spectrum = {0, 0, 0};
    l.sky = {1, 1, 1};
    Camera c;
    c.position = {-4, 0, 0};
    c.look_at = {0, 0, 0};
    c.vertical_fov = 0.5;
    c.width = c.height = 16;
    RenderConfig cfg;
    cfg.mode = ShadingMode::PathTracing;
    cfg.spp = 256;
    cfg.seed = 9;
    const RenderOutput out = render(scene, c, l, Medium{}, cfg);
    // Interior pixels only: silhouette pixels mix in sky samples.
    const LabelMap& labels = out.groundtruth.labels;
    double sum = 0;
    int n = 0;
    for (int y = 1; y + 1 < labels.height(); ++y)
        for (int x = 1; x + 1 < labels.width(); ++x) {
            bool interior = true;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) interior &= labels(x + dx, y + dy) == ClassId::Tree;
            if (!interior) continue;
            sum += out.frame.linear(x, y).g;
            ++n;
        }
    ASSERT_GT(n, 30);
    EXPECT_NEAR(sum / n, 0.5, 0.01);
    EXPECT_EQ(out.stats.rejected_samples, 0u);
}

TEST(PathTracer, OccludedPointGetsNoDirectLightButLambertianDoes) {
    World w = ground_world();
    w.add(make_box({-2, -2, 3}, {2, 2, 3.5}, ClassId::Building), diffuse(0.5));
    const RenderScene scene(std::move(w));
    Lighting l;
    l.sun.direction = {0, 0, -1};
    const Ray ray{{0.5, 0.5, 2}, {0, 0, -1}};
    const auto hit = scene.intersect(ray);
    ASSERT_TRUE(hit);
    EXPECT_GT(shade_lambertian(*hit, scene.material(*hit), l.sun).r, 0.0);
    Pcg32 rng(6, 6);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(trace_path(scene, Medium{}, l, ray, {1, 3}, rng), (Rgb{0, 0, 0}));
}

TEST(PathTracer, AbsorbingFogAttenuatesByBeerLambert) {
    const RenderScene scene(ground_world());
    Lighting l;
    l.sun.direction = {0, 0, -1};
    Medium fog;
    fog.enabled = true;
    fog.absorption_coefficient = 0.05;
    fog.top_height = 10.0;
    const Ray ray{{0, 0, 5}, {0, 0, -1}};
    const double expected = 0.5 * kInvPi * 3.0 * std::exp(-0.05 * 5) * std::exp(-0.05 * 10);
    EXPECT_NEAR(transmittance(fog, {{0, 0, 0}, {0, 0, 1}}, kInf), std::exp(-0.5), 1e-15);
    Pcg32 rng(7, 7);
    const int n = 20000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        const double v = trace_path(scene, fog, l, ray, {1, 3}, rng).r;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_LE(std::abs(mean - expected), 3 * se) << mean << " vs " << expected;
}

TEST(Medium, SlabIntervalClipsToHeightRange) {
    Medium m;
    m.enabled = true;
    m.scattering_coefficient = 0.1;
    m.top_height = 10;
    auto [a, b] = slab_interval(m, {{0, 0, 20}, {0, 0, -1}}, kInf);
    EXPECT_DOUBLE_EQ(a, 10);
    EXPECT_DOUBLE_EQ(b, 20);
    std::tie(a, b) = slab_interval(m, {{0, 0, 20}, {0, 0, 1}}, kInf);
    EXPECT_GE(a, b);
    std::tie(a, b) = slab_interval(m, {{0, 0, 5}, {1, 0, 0}}, 7.0);
    EXPECT_DOUBLE_EQ(a, 0);
    EXPECT_DOUBLE_EQ(b, 7);
    Medium bad = m;
    bad.absorption_coefficient = -1;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = m;
    bad.anisotropy = 1.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(HenyeyGreenstein, IsotropicAtZeroAnisotropyOverOctants) {
    Pcg32 rng(8, 8);
    const int n = 16000;
    std::array<int, 8> counts{};
    const Vec3 dir = normalize(Vec3{0.3, -0.2, 0.9});
    for (int i = 0; i < n; ++i) {
        const Vec3 v = sample_hg(dir, 0.0, rng.uniform(), rng.uniform());
        ASSERT_NEAR(length(v), 1.0, 1e-12);
        ++counts[(v.x > 0) + 2 * (v.y > 0) + 4 * (v.z > 0)];
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - n / 8.0) * (c - n / 8.0) / (n / 8.0);
    EXPECT_LT(chi2, kChiSquare7);
}

TEST(HenyeyGreenstein, PhaseNormalizesAndMeanCosineIsG) {
    for (double g : {-0.5, 0.0, 0.3, 0.8}) {
        const int m = 200000;
        double integral = 0;
        for (int i = 0; i < m; ++i) {
            const double mu = -1.0 + (i + 0.5) * 2.0 / m;
            integral += hg_phase(mu, g);
        }
        EXPECT_NEAR(integral * 2.0 / m * kTwoPi, 1.0, 1e-4) << "g=" << g;

        Pcg32 rng(9, static_cast<std::uint64_t>(g * 100 + 100));
        const Vec3 dir{0, 0, 1};
        const int n = 40000;
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += dot(sample_hg(dir, g, rng.uniform(), rng.uniform()), dir);
        EXPECT_NEAR(sum / n, g, 0.015) << "g=" << g;
    }
}

TEST(Render, SkyOnlyCameraYieldsSkyLabelsAndInfiniteDepth) {
    const RenderScene scene(street_world());
    Camera c;
    c.position = {0, 0, 1};
    c.look_at = {-10, 0, 11};
    c.vertical_fov = 0.5;
    c.width = c.height = 16;
    RenderConfig cfg;
    cfg.mode = ShadingMode::PathTracing;
    cfg.spp = 3;
    const Lighting l = oblique_sun();
    const RenderOutput out = render(scene, c, l, Medium{}, cfg);
    for (std::size_t i = 0; i < out.groundtruth.labels.size(); ++i) {
        EXPECT_EQ(out.groundtruth.labels[i], ClassId::Sky);
        EXPECT_EQ(out.groundtruth.depth[i], std::numeric_limits<float>::infinity());
        EXPECT_EQ(out.groundtruth.normals[i], (Vec3f{0, 0, 0}));
        EXPECT_FLOAT_EQ(out.frame.linear[i].b, static_cast<float>(l.sky.b));
    }
}

TEST(Render, GroundtruthIsIdenticalAcrossModesAndSampleCounts) {
    const RenderScene scene(street_world());
    const Camera c = street_camera();
    const Lighting l = oblique_sun();
    RenderConfig cfg;
    const GroundtruthBundle reference = render(scene, c, l, Medium{}, cfg).groundtruth;
    cfg.mode = ShadingMode::CookTorrance;
    EXPECT_EQ(render(scene, c, l, Medium{}, cfg).groundtruth, reference);
    cfg.mode = ShadingMode::PathTracing;
    for (int spp : {1, 10, 13}) {
        cfg.spp = spp;
        EXPECT_EQ(render(scene, c, l, Medium{}, cfg).groundtruth, reference) << spp;
    }
    bool saw_building = false, saw_sky = false;
    for (std::size_t i = 0; i < reference.labels.size(); ++i) {
        saw_building |= reference.labels[i] == ClassId::Building;
        saw_sky |= reference.labels[i] == ClassId::Sky;
        if (reference.labels[i] != ClassId::Sky) {
            const Vec3f n = reference.normals[i];
            EXPECT_NEAR(std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z), 1.0, 1e-6);
            EXPECT_TRUE(std::isfinite(reference.depth[i]));
        }
    }
    EXPECT_TRUE(saw_building);
    EXPECT_TRUE(saw_sky);
}

TEST(Render, OutputDoesNotDependOnThreadCount) {
    const RenderScene scene(street_world());
    const Camera c = street_camera(40);
    Medium fog;
    fog.enabled = true;
    fog.scattering_coefficient = 0.02;
    fog.anisotropy = 0.5;
    RenderConfig cfg;
    cfg.mode = ShadingMode::PathTracing;
    cfg.spp = 4;
    cfg.seed = 77;
    cfg.threads = 1;
    const RenderOutput a = render(scene, c, oblique_sun(), fog, cfg);
    cfg.threads = 5;
    const RenderOutput b = render(scene, c, oblique_sun(), fog, cfg);
    EXPECT_EQ(a.frame.linear, b.frame.linear);
    EXPECT_EQ(a.frame.display, b.frame.display);
    EXPECT_EQ(a.groundtruth, b.groundtruth);
    cfg.seed = 78;
    EXPECT_NE(render(scene, c, oblique_sun(), fog, cfg).frame.linear, a.frame.linear);
}

TEST(Render, LinearOutputIsFiniteAndNonNegative) {
    const RenderScene scene(street_world());
    RenderConfig cfg;
    for (ShadingMode mode : {ShadingMode::Lambertian, ShadingMode::CookTorrance, ShadingMode::PathTracing}) {
        cfg.mode = mode;
        cfg.spp = 2;
        const RenderOutput out = render(scene, street_camera(), oblique_sun(), Medium{}, cfg);
        for (const Rgb32f& p : out.frame.linear.pixels()) {
            ASSERT_TRUE(std::isfinite(p.r) && std::isfinite(p.g) && std::isfinite(p.b));
            ASSERT_GE(std::min({p.r, p.g, p.b}), 0.0f);
        }
    }
}

TEST(Render, RejectsInvalidInputsBeforeRendering) {
    const RenderScene scene(street_world());
    const Camera c = street_camera();
    const Lighting l = oblique_sun();
    RenderConfig cfg;
    cfg.spp = 0;
    EXPECT_THROW(render(scene, c, l, Medium{}, cfg), std::invalid_argument);
    cfg.spp = 1;
    cfg.max_bounces = 0;
    EXPECT_THROW(render(scene, c, l, Medium{}, cfg), std::invalid_argument);
    cfg.max_bounces = 8;
    Camera bad = c;
    bad.height = -1;
    EXPECT_THROW(render(scene, bad, l, Medium{}, cfg), std::invalid_argument);
    Lighting bad_light = l;
    bad_light.sun.direction = {0, 0, -1.001};
    EXPECT_THROW(render(scene, c, bad_light, Medium{}, cfg), std::invalid_argument);
    bad_light = l;
    bad_light.sun.spectrum = {-1, 0, 0};
    EXPECT_THROW(render(scene, c, bad_light, Medium{}, cfg), std::invalid_argument);
    Medium bad_medium;
    bad_medium.scattering_coefficient = -0.1;
    EXPECT_THROW(render(scene, c, l, bad_medium, cfg), std::invalid_argument);
}

TEST(Render, ModeNamesRoundTrip) {
    for (ShadingMode m : {ShadingMode::Lambertian, ShadingMode::CookTorrance, ShadingMode::PathTracing})
        EXPECT_EQ(parse_shading_mode(to_string(m)), m);
    EXPECT_THROW(parse_shading_mode("phong"), std::invalid_argument);
}

TEST(Tonemap, ReinhardThenGamma) {
    EXPECT_EQ(tonemap_channel(0.0), 0);
    EXPECT_EQ(tonemap_channel(-1.0), 0);
    EXPECT_EQ(tonemap_channel(std::nan("")), 0);
    EXPECT_EQ(tonemap_channel(kInf), 255);
    EXPECT_EQ(tonemap_channel(1.0), std::lround(255 * std::pow(0.5, 1 / 2.2)));
    EXPECT_EQ(tonemap_channel(1e12), 255);
    int prev = 0;
    for (int i = 0; i <= 1000; ++i) {
        const int v = tonemap_channel(i * 0.01);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(ImageIo, PngRoundTrip) {
    const auto dir = scratch_dir("png");
    Image<Rgb8> img(7, 5);
    Pcg32 rng(10, 10);
    for (auto& p : img.pixels())
        p = {static_cast<std::uint8_t>(rng.bounded(256)), static_cast<std::uint8_t>(rng.bounded(256)),
             static_cast<std::uint8_t>(rng.bounded(256))};
    write_png(dir / "a.png", img);
    EXPECT_EQ(read_png(dir / "a.png"), img);
    EXPECT_THROW(read_png(dir / "missing.png"), std::runtime_error);
}

TEST(ImageIo, LabelPngIsIndexedWithClassPalette) {
    const auto dir = scratch_dir("labels");
    Pcg32 rng(11, 11);
    const LabelMap labels = random_labels(13, 9, 7, rng);
    write_label_png(dir / "l.png", labels);
    EXPECT_EQ(read_label_png(dir / "l.png"), labels);
    std::ifstream in(dir / "l.png", std::ios::binary);
    std::array<unsigned char, 26> head{};
    in.read(reinterpret_cast<char*>(head.data()), head.size());
    EXPECT_EQ(head[25], 3);  // IHDR color type: palette
    const Image<Rgb8> rgb = read_png(dir / "l.png");
    for (std::size_t i = 0; i < labels.size(); ++i) EXPECT_EQ(rgb[i], class_palette()[index_of(labels[i])]);

    Image<Rgb8> foreign(2, 2, Rgb8{1, 2, 3});
    write_png(dir / "f.png", foreign);
    EXPECT_THROW(read_label_png(dir / "f.png"), std::runtime_error);
}

TEST(ImageIo, PfmRoundTripKeepsInfinityAndOrientation) {
    const auto dir = scratch_dir("pfm");
    Image<float> depth(4, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 4; ++x) depth(x, y) = static_cast<float>(10 * y + x) + 0.25f;
    depth(1, 2) = std::numeric_limits<float>::infinity();
    write_pfm(dir / "d.pfm", depth);
    EXPECT_EQ(read_pfm_gray(dir / "d.pfm"), depth);

    Image<Vec3f> normals(3, 2);
    normals(2, 0) = {0.f, 0.f, 1.f};
    normals(0, 1) = {-0.6f, 0.8f, 0.f};
    write_pfm(dir / "n.pfm", normals);
    EXPECT_EQ(read_pfm_vec3(dir / "n.pfm"), normals);

    std::ifstream in(dir / "d.pfm", std::ios::binary);
    std::string magic, scale;
    int w = 0, h = 0;
    in >> magic >> w >> h >> scale;
    EXPECT_EQ(magic, "Pf");
    EXPECT_EQ(scale, "-1.0");
    in.get();
    float first = 0;
    in.read(reinterpret_cast<char*>(&first), sizeof first);
    EXPECT_EQ(first, depth(0, 2));  // bottom row first
    EXPECT_THROW(read_pfm_vec3(dir / "d.pfm"), std::runtime_error);
}

TEST(ImageIo, MetadataRoundTrip) {
    const auto dir = scratch_dir("meta");
    RenderConfig cfg;
    cfg.mode = ShadingMode::PathTracing;
    cfg.spp = 40;
    cfg.seed = 123;
    const Metadata m = render_metadata(street_camera(), oblique_sun(), Medium{}, cfg);
    write_metadata(dir / "m.txt", m);
    EXPECT_EQ(read_metadata(dir / "m.txt"), m);
    bool found = false;
    for (const auto& [k, v] : m)
        if (k == "spp") {
            EXPECT_EQ(v, "40");
            found = true;
        }
    EXPECT_TRUE(found);
}
