#include "urbansim/render/renderer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "urbansim/core/text.hpp"

namespace urbansim {

std::string to_string(ShadingMode mode) {
    switch (mode) {
        case ShadingMode::Lambertian: return "lambertian";
        case ShadingMode::CookTorrance: return "cook_torrance";
        case ShadingMode::PathTracing: return "path_tracing";
    }
    return "unknown";
}

ShadingMode parse_shading_mode(const std::string& text) {
    if (text == "lambertian") return ShadingMode::Lambertian;
    if (text == "cook_torrance") return ShadingMode::CookTorrance;
    if (text == "path_tracing") return ShadingMode::PathTracing;
    throw std::invalid_argument("unknown shading mode '" + text + "'");
}

void RenderConfig::validate() const {
    if (spp < 1) throw std::invalid_argument("RenderConfig: spp must be >= 1");
    if (max_bounces < 1) throw std::invalid_argument("RenderConfig: max_bounces must be >= 1");
    if (rr_start_bounce < 1) throw std::invalid_argument("RenderConfig: rr_start_bounce must be >= 1");
    if (threads < 0) throw std::invalid_argument("RenderConfig: threads must be >= 0");
}

std::uint8_t tonemap_channel(double linear) {
    if (!(linear > 0.0)) return 0;
    if (std::isinf(linear)) return 255;
    const double v = std::pow(linear / (1.0 + linear), 1.0 / 2.2);
    return static_cast<std::uint8_t>(std::clamp(std::lround(255.0 * v), 0L, 255L));
}

Rgb8 tonemap(Rgb32f c) { return {tonemap_channel(c.r), tonemap_channel(c.g), tonemap_channel(c.b)}; }

Image<Rgb8> tonemap(const Image<Rgb32f>& linear) {
    Image<Rgb8> out(linear.width(), linear.height());
    for (std::size_t i = 0; i < linear.size(); ++i) out[i] = tonemap(linear[i]);
    return out;
}

namespace {

constexpr int kTile = 16;

// Runs fn(x0, y0, x1, y1) over 16x16 tiles on a pool of workers.
template <typename Fn>
void for_each_tile(int width, int height, int threads, Fn fn) {
    const int tiles_x = (width + kTile - 1) / kTile;
    const int tiles_y = (height + kTile - 1) / kTile;
    const int tiles = tiles_x * tiles_y;
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::max(1, std::min(threads, tiles));

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (int t = next++; t < tiles; t = next++) {
                const int x0 = (t % tiles_x) * kTile, y0 = (t / tiles_x) * kTile;
                fn(x0, y0, std::min(width, x0 + kTile), std::min(height, y0 + kTile));
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = tiles;
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

Rgb32f to_f32(Rgb c) { return {static_cast<float>(c.r), static_cast<float>(c.g), static_cast<float>(c.b)}; }

}  // namespace

GroundtruthBundle render_groundtruth(const RenderScene& scene, const Camera& camera, int threads) {
    const PinholeCamera pinhole(camera);
    const int w = camera.width, h = camera.height;
    GroundtruthBundle gt{LabelMap(w, h, ClassId::Sky), Image<float>(w, h, std::numeric_limits<float>::infinity()),
                         Image<Vec3f>(w, h)};
    for_each_tile(w, h, threads, [&](int x0, int y0, int x1, int y1) {
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                const auto hit = scene.intersect(pinhole.generate(x + 0.5, y + 0.5));
                if (!hit) continue;
                gt.labels(x, y) = hit->label;
                gt.depth(x, y) = static_cast<float>(hit->t);
                gt.normals(x, y) = {static_cast<float>(hit->normal.x), static_cast<float>(hit->normal.y),
                                    static_cast<float>(hit->normal.z)};
            }
    });
    return gt;
}

RenderOutput render(const RenderScene& scene, const Camera& camera, const Lighting& lighting, const Medium& medium,
                    const RenderConfig& config) {
    camera.validate();
    lighting.validate();
    medium.validate();
    config.validate();

    const PinholeCamera pinhole(camera);
    const int w = camera.width, h = camera.height;
    RenderOutput out;
    out.groundtruth = render_groundtruth(scene, camera, config.threads);
    out.frame.linear = Image<Rgb32f>(w, h);
    std::atomic<std::uint64_t> rejected{0};
    const PathTracerSettings settings{config.max_bounces, config.rr_start_bounce};

    for_each_tile(w, h, config.threads, [&](int x0, int y0, int x1, int y1) {
        std::vector<std::uint32_t> perm(static_cast<std::size_t>(config.spp));
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                const auto pixel = static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(w) + static_cast<std::uint64_t>(x);
                if (config.mode != ShadingMode::PathTracing) {
                    const Ray ray = pinhole.generate(x + 0.5, y + 0.5);
                    const auto hit = scene.intersect(ray);
                    Rgb c = lighting.sky;
                    if (hit) {
                        const Material& m = scene.material(*hit);
                        c = config.mode == ShadingMode::Lambertian ? shade_lambertian(*hit, m, lighting.sun)
                                                                   : shade_cook_torrance(*hit, m, lighting.sun, ray.direction);
                    }
                    out.frame.linear(x, y) = to_f32(c);
                    continue;
                }
                // N-rooks: sample i takes column stratum i and row stratum perm[i].
                std::iota(perm.begin(), perm.end(), 0u);
                Pcg32 strata(hash_key({config.seed, pixel}), static_cast<std::uint64_t>(RngStream::PixelStrata));
                for (std::size_t i = perm.size(); i > 1; --i)
                    std::swap(perm[i - 1], perm[strata.bounded(static_cast<std::uint32_t>(i))]);
                Rgb sum;
                int accepted = 0;
                const double n = config.spp;
                for (int s = 0; s < config.spp; ++s) {
                    Pcg32 rng(hash_key({config.seed, pixel, static_cast<std::uint64_t>(s)}),
                              static_cast<std::uint64_t>(RngStream::PixelSample));
                    const double sx = (s + rng.uniform()) / n;
                    const double sy = (perm[static_cast<std::size_t>(s)] + rng.uniform()) / n;
                    const Rgb c = trace_path(scene, medium, lighting, pinhole.generate(x + sx, y + sy), settings, rng);
                    if (!c.is_finite() || c.r < 0.0 || c.g < 0.0 || c.b < 0.0) {
                        ++rejected;
                        continue;
                    }
                    sum += c;
                    ++accepted;
                }
                out.frame.linear(x, y) = accepted > 0 ? to_f32(sum / accepted) : Rgb32f{};
            }
    });
    out.stats.rejected_samples = rejected.load();
    if (out.stats.rejected_samples > 0)
        std::clog << "render: rejected " << out.stats.rejected_samples << " non-finite samples\n";
    out.frame.display = tonemap(out.frame.linear);
    return out;
}

std::vector<std::pair<std::string, std::string>> render_metadata(const Camera& camera, const Lighting& lighting,
                                                                 const Medium& medium, const RenderConfig& config) {
    auto vec = [](Vec3 v) { return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z); };
    auto rgb = [](Rgb c) { return format_double(c.r) + " " + format_double(c.g) + " " + format_double(c.b); };
    return {
        {"seed", std::to_string(config.seed)},
        {"mode", to_string(config.mode)},
        {"spp", std::to_string(config.mode == ShadingMode::PathTracing ? config.spp : 1)},
        {"max_bounces", std::to_string(config.max_bounces)},
        {"rr_start_bounce", std::to_string(config.rr_start_bounce)},
        {"camera_position", vec(camera.position)},
        {"camera_look_at", vec(camera.look_at)},
        {"camera_vertical_fov", format_double(camera.vertical_fov)},
        {"width", std::to_string(camera.width)},
        {"height", std::to_string(camera.height)},
        {"sun_direction", vec(lighting.sun.direction)},
        {"sun_spectrum", rgb(lighting.sun.spectrum)},
        {"sun_angular_radius", format_double(lighting.sun.angular_radius)},
        {"sky_radiance", rgb(lighting.sky)},
        {"medium_enabled", medium.enabled ? "true" : "false"},
        {"medium_scattering", format_double(medium.scattering_coefficient)},
        {"medium_absorption", format_double(medium.absorption_coefficient)},
        {"medium_anisotropy", format_double(medium.anisotropy)},
        {"medium_top_height", format_double(medium.top_height)},
    };
}

}  // namespace urbansim
