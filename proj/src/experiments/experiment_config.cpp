#include "urbansim/experiments/experiment_config.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "urbansim/core/text.hpp"

namespace urbansim {

FidelityTier parse_fidelity(const std::string& name) {
    if (name == "lambertian") return {name, ShadingMode::Lambertian, 1};
    if (name == "cook_torrance") return {name, ShadingMode::CookTorrance, 1};
    if (name.rfind("mcpt", 0) == 0 && name.size() > 4) {
        const auto spp = parse_int(std::string_view(name).substr(4));
        if (spp < 1 || spp > 1'000'000) throw std::invalid_argument("fidelity '" + name + "': spp out of range");
        return {name, ShadingMode::PathTracing, static_cast<int>(spp)};
    }
    throw std::invalid_argument("unknown fidelity '" + name + "' (expected lambertian, cook_torrance or mcpt<spp>)");
}

std::vector<FidelityTier> default_fidelities() {
    std::vector<FidelityTier> out{parse_fidelity("lambertian"), parse_fidelity("cook_torrance")};
    for (int spp = 10; spp <= 130; spp += 30) out.push_back(parse_fidelity("mcpt" + std::to_string(spp)));
    return out;
}

void CameraPolicy::validate() const {
    if (!(height > 0.0)) throw std::invalid_argument("camera: height must be positive");
    if (!(std::abs(pitch) < 0.5 * kPi)) throw std::invalid_argument("camera: pitch must lie in (-90, 90) degrees");
    if (!(vertical_fov > 0.0 && vertical_fov < kPi)) throw std::invalid_argument("camera: vfov must lie in (0, 180) degrees");
    if (width <= 0 || height_px <= 0) throw std::invalid_argument("camera: resolution must be positive");
    if (candidates < 1) throw std::invalid_argument("camera: candidates must be >= 1");
    if (!(min_clearance >= 0.0)) throw std::invalid_argument("camera: min_clearance must be >= 0");
}

namespace {

constexpr double kDeg = kPi / 180.0;

struct Field {
    std::string section, key;
    std::function<std::string()> get;
    std::function<void(const std::string&)> set;
};

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& what) {
    std::string t = s;
    for (char& c : t)
        if (c == ',') c = ' ';
    const auto tok = split_ws(t);
    if (tok.size() != n) throw std::invalid_argument(what + ": expected " + std::to_string(n) + " numbers, got '" + s + "'");
    std::vector<double> out;
    for (const auto& x : tok) out.push_back(parse_double(x));
    return out;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

class Binder {
public:
    std::vector<Field> fields;

    void real(const std::string& s, const std::string& k, double& v, double scale = 1.0) {
        fields.push_back({s, k, [&v, scale] { return format_double(v / scale); },
                          [&v, scale](const std::string& x) { v = parse_double(x) * scale; }});
    }
    void integer(const std::string& s, const std::string& k, int& v) {
        fields.push_back({s, k, [&v] { return std::to_string(v); }, [&v](const std::string& x) {
                              const auto n = parse_int(x);
                              if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
                                  throw std::invalid_argument("integer out of range");
                              v = static_cast<int>(n);
                          }});
    }
    void u64(const std::string& s, const std::string& k, std::uint64_t& v) {
        fields.push_back({s, k, [&v] { return std::to_string(v); }, [&v](const std::string& x) { v = parse_u64(x); }});
    }
    void flag(const std::string& s, const std::string& k, bool& v) {
        fields.push_back({s, k, [&v] { return std::string(v ? "true" : "false"); }, [&v](const std::string& x) { v = parse_bool(x); }});
    }
    void rgb(const std::string& s, const std::string& k, Rgb& v) {
        fields.push_back({s, k, [&v] { return format_double(v.r) + " " + format_double(v.g) + " " + format_double(v.b); },
                          [&v, s, k](const std::string& x) {
                              const auto d = parse_list(x, 3, s + "." + k);
                              v = {d[0], d[1], d[2]};
                          }});
    }
    void vec3(const std::string& s, const std::string& k, Vec3& v) {
        fields.push_back({s, k, [&v] { return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z); },
                          [&v, s, k](const std::string& x) {
                              const auto d = parse_list(x, 3, s + "." + k);
                              v = {d[0], d[1], d[2]};
                          }});
    }
};

void bind_process(Binder& b, const std::string& s, PointProcessConfig& p, MarkPriors& m) {
    b.real(s, "intensity", p.intensity);
    b.integer(s, "max_rejection_rounds", p.max_rejection_rounds);
    for (Category c : kAllCategories) {
        const std::string n(name_of(c));
        const auto i = static_cast<std::size_t>(c);
        b.real(s, "weight_" + n, m.category_weights[i]);
        b.real(s, "radius_" + n, p.hard_core_radius[i]);
        b.real(s, "scale_min_" + n, m.scale_range[i].lo);
        b.real(s, "scale_max_" + n, m.scale_range[i].hi);
    }
    b.real(s, "orientation_min_deg", m.orientation_range.lo, kDeg);
    b.real(s, "orientation_max_deg", m.orientation_range.hi, kDeg);
}

Binder bind(ExperimentConfig& c) {
    Binder b;
    b.integer("dataset", "n_scenes", c.n_scenes);
    b.u64("dataset", "base_seed", c.base_seed);
    b.integer("dataset", "threads", c.threads);
    b.integer("dataset", "max_bounces", c.max_bounces);
    b.integer("dataset", "rr_start_bounce", c.rr_start_bounce);
    b.real("dataset", "time_fraction", c.scene.time_fraction);
    b.fields.push_back({"dataset", "fidelities",
                        [&c] {
                            std::string s;
                            for (const auto& f : c.fidelities) s += (s.empty() ? "" : ",") + f.name;
                            return s;
                        },
                        [&c](const std::string& x) {
                            c.fidelities.clear();
                            for (const auto& t : split(x, ',')) c.fidelities.push_back(parse_fidelity(std::string(trim(t))));
                        }});

    b.real("region", "min_x", c.scene.region.min_corner.x);
    b.real("region", "min_y", c.scene.region.min_corner.y);
    b.real("region", "max_x", c.scene.region.max_corner.x);
    b.real("region", "max_y", c.scene.region.max_corner.y);

    b.real("roads", "cell_size", c.scene.roads.cell_size);
    b.real("roads", "spacing", c.scene.roads.spacing);
    b.real("roads", "width", c.scene.roads.width);
    b.real("roads", "offset", c.scene.roads.offset);

    bind_process(b, "static", c.scene.static_process, c.scene.static_marks);
    b.real("static", "road_clearance", c.scene.static_road_clearance);
    bind_process(b, "dynamic", c.scene.dynamic_process, c.scene.dynamic_marks);

    b.real("camera", "height", c.camera.height);
    b.real("camera", "pitch_deg", c.camera.pitch, kDeg);
    b.real("camera", "vfov_deg", c.camera.vertical_fov, kDeg);
    b.integer("camera", "width", c.camera.width);
    b.integer("camera", "height_px", c.camera.height_px);
    b.integer("camera", "candidates", c.camera.candidates);
    b.real("camera", "min_clearance", c.camera.min_clearance);

    b.vec3("sun", "direction", c.lighting.sun.direction);
    b.rgb("sun", "spectrum", c.lighting.sun.spectrum);
    b.real("sun", "angular_radius_deg", c.lighting.sun.angular_radius, kDeg);
    b.rgb("sky", "radiance", c.lighting.sky);

    b.flag("medium", "enabled", c.medium.enabled);
    b.real("medium", "scattering", c.medium.scattering_coefficient);
    b.real("medium", "absorption", c.medium.absorption_coefficient);
    b.real("medium", "anisotropy", c.medium.anisotropy);
    b.real("medium", "top_height", c.medium.top_height);

    b.rgb("appearance", "tint", c.appearance.tint);
    b.real("appearance", "texture_period_scale", c.appearance.texture_period_scale);
    b.real("appearance", "specular_scale", c.appearance.specular_scale);
    b.u64("appearance", "palette_seed", c.appearance.palette_seed);

    b.u64("assets", "catalog_seed", c.catalog_seed);
    for (Category cat : kAllCategories)
        b.integer("assets", std::string(name_of(cat)), c.asset_counts[static_cast<std::size_t>(cat)]);
    return b;
}

void apply(ExperimentConfig& c, const std::string& section, const std::string& key, const std::string& value) {
    Binder b = bind(c);
    for (auto& f : b.fields)
        if (f.section == section && f.key == key) {
            try {
                f.set(value);
            } catch (const std::exception& e) {
                throw std::invalid_argument("config [" + section + "] " + key + ": " + e.what());
            }
            return;
        }
    throw std::invalid_argument("config: unknown key [" + section + "] " + key);
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig c;
    SceneConfig& s = c.scene;
    s.static_process.intensity = 0.004;
    s.static_process.hard_core_radius = {9.0, 0.5, 2.5, 3.0};
    s.static_marks.category_weights = {0.6, 0.0, 0.4, 0.0};
    s.dynamic_process.intensity = 0.004;
    s.dynamic_process.hard_core_radius = {9.0, 0.8, 2.5, 3.5};
    s.dynamic_marks.category_weights = {0.0, 0.4, 0.0, 0.6};
    for (MarkPriors* m : {&s.static_marks, &s.dynamic_marks}) {
        m->scale_range = {Interval{0.8, 1.2}, Interval{0.9, 1.1}, Interval{0.8, 1.3}, Interval{0.95, 1.05}};
        m->asset_counts = c.asset_counts;
    }
    c.lighting.sun.direction = normalize(Vec3{-0.4, -0.3, -0.85});
    c.lighting.sun.spectrum = {3.2, 3.0, 2.7};
    c.lighting.sky = {0.55, 0.7, 0.95};
    c.medium.anisotropy = 0.6;
    c.target_overrides = {
        {"appearance.tint", "1.2 0.95 0.75"},
        {"appearance.texture_period_scale", "1.8"},
        {"appearance.specular_scale", "0.5"},
        {"appearance.palette_seed", "97"},
        {"assets.catalog_seed", "31"},
        {"static.weight_building", "0.45"},
        {"static.weight_tree", "0.55"},
        {"dynamic.intensity", "0.006"},
        {"sun.direction", "0.5 -0.2 -0.75"},
        {"sun.spectrum", "3.4 3.0 2.4"},
        {"sky.radiance", "0.7 0.72 0.8"},
        {"medium.enabled", "true"},
        {"medium.scattering", "0.008"},
        {"medium.absorption", "0.002"},
    };
    return c;
}

namespace {

ExperimentConfig parse_ini(const KeyValueConfig& ini, bool check_target) {
    ExperimentConfig c = ExperimentConfig::defaults();
    bool target_given = false;
    std::vector<std::pair<std::string, std::string>> target;
    for (const auto& section : ini.sections()) {
        if (section == "target") {
            target_given = true;
            for (const auto& key : ini.keys(section)) target.emplace_back(key, *ini.find(section, key));
            continue;
        }
        for (const auto& key : ini.keys(section)) apply(c, section, key, *ini.find(section, key));
    }
    if (target_given) c.target_overrides = std::move(target);
    // Normalize only when off unit length, so re-parsing a written config is exact.
    const double sun_len = length(c.lighting.sun.direction);
    if (sun_len > 0.0 && std::abs(sun_len - 1.0) > 1e-12) c.lighting.sun.direction = normalize(c.lighting.sun.direction);
    for (MarkPriors* m : {&c.scene.static_marks, &c.scene.dynamic_marks}) m->asset_counts = c.asset_counts;
    c.validate();
    // Validate the overrides now rather than at first use.
    if (check_target && !c.target_overrides.empty()) c.target_domain();
    return c;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_ini(const KeyValueConfig& ini) { return parse_ini(ini, true); }

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) { return from_ini(KeyValueConfig::load(path)); }

KeyValueConfig ExperimentConfig::to_ini() const {
    ExperimentConfig copy = *this;
    KeyValueConfig ini;
    for (const auto& f : bind(copy).fields) ini.set(f.section, f.key, f.get());
    for (const auto& [k, v] : target_overrides) ini.set("target", k, v);
    return ini;
}

ExperimentConfig ExperimentConfig::target_domain() const {
    KeyValueConfig ini = to_ini();
    for (const auto& [k, v] : target_overrides) {
        const auto dot = k.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == k.size())
            throw std::invalid_argument("config [target] " + k + ": expected section.key");
        const std::string section = k.substr(0, dot);
        if (section == "target") throw std::invalid_argument("config [target] cannot override itself");
        ini.set(section, k.substr(dot + 1), v);
    }
    // Drop the [target] section so the derived domain has no further overrides.
    KeyValueConfig plain;
    for (const auto& section : ini.sections())
        if (section != "target")
            for (const auto& key : ini.keys(section)) plain.set(section, key, *ini.find(section, key));
    ExperimentConfig out = parse_ini(plain, false);
    out.target_overrides.clear();
    return out;
}

void ExperimentConfig::validate() const {
    scene.validate();
    camera.validate();
    lighting.validate();
    medium.validate();
    if (n_scenes < 1) throw std::invalid_argument("config: n_scenes must be >= 1");
    if (max_bounces < 1 || rr_start_bounce < 1) throw std::invalid_argument("config: bounce settings must be >= 1");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    if (fidelities.empty()) throw std::invalid_argument("config: fidelity list is empty");
    std::set<std::string> names;
    for (const auto& f : fidelities)
        if (!names.insert(f.name).second) throw std::invalid_argument("config: duplicate fidelity " + f.name);
    for (int n : asset_counts)
        if (n < 1) throw std::invalid_argument("config: every asset count must be >= 1");
}

}  // namespace urbansim
