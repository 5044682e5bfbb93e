#include "urbansim/experiments/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "urbansim/assets/world.hpp"
#include "urbansim/core/text.hpp"
#include "urbansim/experiments/camera_policy.hpp"
#include "urbansim/experiments/digest.hpp"
#include "urbansim/render/image_io.hpp"
#include "urbansim/scene/scene_io.hpp"

namespace urbansim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormat = "urbansim-manifest 1";
constexpr const char* kColumns =
    "scene_index,scene_seed,fidelity,mode,spp,status,rgb,rgb_sha256,labels,labels_sha256,depth,depth_sha256,"
    "normals,normals_sha256,metadata,metadata_sha256,error";

std::string scene_dir(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "scene_%04d", index);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

FileRecord record(const fs::path& root, const std::string& rel) { return {rel, sha256_file(root / rel)}; }

std::string join(const std::vector<std::string>& v, char sep) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : std::string(1, sep)) + x;
    return s;
}

}  // namespace

bool DatasetManifest::complete() const {
    if (frames.size() != static_cast<std::size_t>(n_scenes) * fidelities.size()) return false;
    for (const auto& f : frames)
        if (!f.complete) return false;
    return true;
}

std::vector<const FrameEntry*> DatasetManifest::frames_for(const std::string& fidelity) const {
    std::vector<const FrameEntry*> out;
    for (const auto& f : frames)
        if (f.fidelity == fidelity && f.complete) out.push_back(&f);
    std::stable_sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->scene_index < b->scene_index; });
    return out;
}

DatasetManifest generate_dataset(const ExperimentConfig& config, const fs::path& out_dir, const std::string& dataset_id) {
    // Generation runs from the parsed snapshot so that regenerating from the
    // snapshot file sees exactly the same numbers.
    const std::string snapshot_text = config.to_ini().to_string();
    const ExperimentConfig cfg = ExperimentConfig::from_ini(KeyValueConfig::parse(snapshot_text));

    fs::create_directories(out_dir);
    DatasetManifest m;
    m.dataset_id = dataset_id;
    m.n_scenes = cfg.n_scenes;
    m.base_seed = cfg.base_seed;
    for (const auto& f : cfg.fidelities) m.fidelities.push_back(f.name);
    m.root = out_dir;
    {
        std::ofstream os(out_dir / kSnapshotFile, std::ios::binary);
        os << snapshot_text;
        if (!os) throw std::runtime_error((out_dir / kSnapshotFile).string() + ": write failed");
    }
    m.config_snapshot = record(out_dir, kSnapshotFile);

    const AssetCatalog catalog = AssetCatalog::procedural(cfg.asset_counts, cfg.catalog_seed, cfg.appearance);
    const RoadNetwork roads = make_manhattan_roads(cfg.scene.region, cfg.scene.roads);

    for (int i = 0; i < cfg.n_scenes; ++i) {
        const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(i);
        const std::string sdir = scene_dir(i);
        std::vector<FrameEntry> entries;
        for (const auto& tier : cfg.fidelities) {
            FrameEntry e;
            e.scene_index = i;
            e.scene_seed = seed;
            e.fidelity = tier.name;
            e.mode = tier.mode;
            e.spp = tier.spp;
            entries.push_back(e);
        }
        try {
            const SceneState scene = sample_scene(cfg.scene, roads, seed);
            fs::create_directories(out_dir / "scenes");
            save_scene(out_dir / "scenes" / (sdir + ".txt"), scene);
            const RenderScene rs(instantiate_scene_geometry(scene, catalog));
            const Camera camera = choose_camera(scene, cfg.camera, seed);
            for (auto& e : entries) {
                try {
                    RenderConfig rc;
                    rc.mode = e.mode;
                    rc.spp = e.spp;
                    rc.max_bounces = cfg.max_bounces;
                    rc.rr_start_bounce = cfg.rr_start_bounce;
                    rc.seed = mix64(seed);
                    rc.threads = cfg.threads;
                    const RenderOutput out = render(rs, camera, cfg.lighting, cfg.medium, rc);

                    const std::string rel = "frames/" + sdir + "/" + e.fidelity + "/";
                    fs::create_directories(out_dir / rel);
                    write_png(out_dir / (rel + "rgb.png"), out.frame.display);
                    write_label_png(out_dir / (rel + "labels.png"), out.groundtruth.labels);
                    write_pfm(out_dir / (rel + "depth.pfm"), out.groundtruth.depth);
                    write_pfm(out_dir / (rel + "normals.pfm"), out.groundtruth.normals);
                    Metadata meta{{"dataset_id", dataset_id},
                                  {"scene_index", std::to_string(i)},
                                  {"scene_seed", std::to_string(seed)},
                                  {"fidelity", e.fidelity}};
                    for (auto& kv : render_metadata(camera, cfg.lighting, cfg.medium, rc)) meta.push_back(kv);
                    meta.emplace_back("dropped_static", std::to_string(scene.dropped_static));
                    meta.emplace_back("dropped_dynamic", std::to_string(scene.dropped_dynamic));
                    meta.emplace_back("rejected_samples", std::to_string(out.stats.rejected_samples));
                    write_metadata(out_dir / (rel + "meta.txt"), meta);

                    e.rgb = record(out_dir, rel + "rgb.png");
                    e.labels = record(out_dir, rel + "labels.png");
                    e.depth = record(out_dir, rel + "depth.pfm");
                    e.normals = record(out_dir, rel + "normals.pfm");
                    e.metadata = record(out_dir, rel + "meta.txt");
                    e.complete = true;
                } catch (const std::exception& ex) {
                    e.error = ex.what();
                    std::cerr << "generate: scene " << i << " fidelity " << e.fidelity << ": " << ex.what() << '\n';
                }
            }
        } catch (const std::exception& ex) {
            for (auto& e : entries) e.error = ex.what();
            std::cerr << "generate: scene " << i << ": " << ex.what() << '\n';
        }
        for (auto& e : entries) m.frames.push_back(std::move(e));
    }
    write_manifest(m);
    return m;
}

void write_manifest(const DatasetManifest& m) {
    const fs::path path = m.root / kManifestFile;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
    os << "#format=" << kFormat << '\n';
    os << "#dataset_id=" << m.dataset_id << '\n';
    os << "#n_scenes=" << m.n_scenes << '\n';
    os << "#base_seed=" << m.base_seed << '\n';
    os << "#fidelities=" << join(m.fidelities, ';') << '\n';
    os << "#config_snapshot=" << m.config_snapshot.path << '\n';
    os << "#config_sha256=" << m.config_snapshot.sha256 << '\n';
    os << "#complete=" << (m.complete() ? "true" : "false") << '\n';
    os << kColumns << '\n';
    for (const auto& f : m.frames) {
        os << f.scene_index << ',' << f.scene_seed << ',' << f.fidelity << ',' << to_string(f.mode) << ',' << f.spp << ','
           << (f.complete ? "ok" : "incomplete");
        for (const FileRecord* r : {&f.rgb, &f.labels, &f.depth, &f.normals, &f.metadata}) os << ',' << r->path << ',' << r->sha256;
        os << ',' << sanitize(f.error) << '\n';
    }
    if (!os) throw std::runtime_error(path.string() + ": write failed");
}

DatasetManifest load_manifest(const fs::path& path) {
    const fs::path file = fs::is_directory(path) ? path / kManifestFile : path;
    std::ifstream is(file);
    if (!is) throw std::runtime_error(file.string() + ": cannot open manifest");
    DatasetManifest m;
    m.root = file.parent_path();
    std::map<std::string, std::string> header;
    std::string line;
    int number = 0;
    bool columns_seen = false;
    auto bad = [&](const std::string& what) {
        return std::runtime_error(file.string() + ":" + std::to_string(number) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++number;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw bad("malformed header line");
            header[line.substr(1, eq - 1)] = line.substr(eq + 1);
            continue;
        }
        if (!columns_seen) {
            if (line != kColumns) throw bad("unexpected column header");
            columns_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 17) throw bad("expected 17 fields, got " + std::to_string(f.size()));
        FrameEntry e;
        try {
            e.scene_index = static_cast<int>(parse_int(f[0]));
            e.scene_seed = parse_u64(f[1]);
            e.fidelity = f[2];
            e.mode = parse_shading_mode(f[3]);
            e.spp = static_cast<int>(parse_int(f[4]));
        } catch (const std::exception& ex) {
            throw bad(ex.what());
        }
        if (f[5] != "ok" && f[5] != "incomplete") throw bad("unknown status '" + f[5] + "'");
        e.complete = f[5] == "ok";
        FileRecord* recs[] = {&e.rgb, &e.labels, &e.depth, &e.normals, &e.metadata};
        for (int k = 0; k < 5; ++k) *recs[k] = {f[6 + 2 * k], f[7 + 2 * k]};
        e.error = f[16];
        m.frames.push_back(std::move(e));
    }
    if (header["format"] != kFormat) throw std::runtime_error(file.string() + ": not an urbansim manifest");
    try {
        m.dataset_id = header.at("dataset_id");
        m.n_scenes = static_cast<int>(parse_int(header.at("n_scenes")));
        m.base_seed = parse_u64(header.at("base_seed"));
        for (const auto& s : split(header.at("fidelities"), ';'))
            if (!s.empty()) m.fidelities.push_back(s);
        m.config_snapshot = {header.at("config_snapshot"), header.at("config_sha256")};
    } catch (const std::out_of_range&) {
        throw std::runtime_error(file.string() + ": manifest header is incomplete");
    }
    return m;
}

std::vector<std::string> verify_manifest(const DatasetManifest& m) {
    std::vector<std::string> problems;
    auto check = [&](const FileRecord& r, const std::string& what) {
        const fs::path p = m.root / r.path;
        if (r.path.empty() || !fs::exists(p)) {
            problems.push_back(what + ": missing file " + r.path);
            return;
        }
        if (sha256_file(p) != r.sha256) problems.push_back(what + ": digest mismatch for " + r.path);
    };
    check(m.config_snapshot, "config snapshot");
    if (m.frames.size() != static_cast<std::size_t>(m.n_scenes) * m.fidelities.size())
        problems.push_back("manifest lists " + std::to_string(m.frames.size()) + " frames, expected " +
                           std::to_string(static_cast<std::size_t>(m.n_scenes) * m.fidelities.size()));
    for (const auto& f : m.frames) {
        const std::string what = "scene " + std::to_string(f.scene_index) + " " + f.fidelity;
        if (!f.complete) {
            problems.push_back(what + ": incomplete (" + f.error + ")");
            continue;
        }
        for (const FileRecord* r : {&f.rgb, &f.labels, &f.depth, &f.normals, &f.metadata}) check(*r, what);
    }
    return problems;
}

DatasetManifest regenerate_from_snapshot(const fs::path& manifest_path, const fs::path& out_dir) {
    const DatasetManifest original = load_manifest(manifest_path);
    const ExperimentConfig cfg = ExperimentConfig::load(original.root / original.config_snapshot.path);
    return generate_dataset(cfg, out_dir, original.dataset_id);
}

std::vector<LabeledImage> load_frames(const DatasetManifest& m, const std::string& fidelity) {
    std::vector<LabeledImage> out;
    for (const auto& f : m.frames) {
        if (f.fidelity != fidelity) continue;
        if (!f.complete)
            throw std::runtime_error("dataset " + m.dataset_id + ": scene " + std::to_string(f.scene_index) + " " + fidelity +
                                     " is incomplete");
        out.push_back({read_png(m.root / f.rgb.path), read_label_png(m.root / f.labels.path)});
    }
    if (out.empty()) throw std::runtime_error("dataset " + m.dataset_id + ": no frames for fidelity '" + fidelity + "'");
    return out;
}

}  // namespace urbansim
