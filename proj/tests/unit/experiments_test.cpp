#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "urbansim/experiments/camera_policy.hpp"
#include "urbansim/experiments/dataset.hpp"
#include "urbansim/experiments/digest.hpp"
#include "urbansim/experiments/experiments.hpp"
#include "urbansim/scene/point_process.hpp"

using namespace urbansim;
using namespace urbansim::testing;

namespace {

ExperimentConfig tiny_config(int n_scenes, std::vector<std::string> fidelities) {
    ExperimentConfig c = ExperimentConfig::defaults();
    c.camera.width = 24;
    c.camera.height_px = 24;
    c.n_scenes = n_scenes;
    c.base_seed = 500;
    c.threads = 2;
    c.fidelities.clear();
    for (const auto& f : fidelities) c.fidelities.push_back(parse_fidelity(f));
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<LabeledImage> synthetic_set(int n, int noise, std::uint64_t seed, int shift = 0) {
    Pcg32 rng(seed, 3);
    std::vector<LabeledImage> out;
    for (int i = 0; i < n; ++i) {
        LabeledImage li;
        li.labels = blocky_labels(20, 16, rng);
        for (auto& c : li.labels.pixels())
            if (c == ClassId::Void) c = ClassId::Sky;
        li.rgb = Image<Rgb8>(20, 16);
        for (std::size_t k = 0; k < li.labels.size(); ++k) {
            const Rgb8 base = class_palette()[index_of(li.labels[k])];
            auto j = [&](int v) {
                const int d = static_cast<int>(rng.bounded(2 * noise + 1)) - noise + shift;
                return static_cast<std::uint8_t>(std::clamp(v + d, 0, 255));
            };
            li.rgb[k] = {j(base.r), j(base.g), j(base.b)};
        }
        out.push_back(std::move(li));
    }
    return out;
}

}  // namespace

TEST(Fidelity, ParsesNamedTiers) {
    EXPECT_EQ(parse_fidelity("lambertian").mode, ShadingMode::Lambertian);
    EXPECT_EQ(parse_fidelity("cook_torrance").mode, ShadingMode::CookTorrance);
    const FidelityTier t = parse_fidelity("mcpt40");
    EXPECT_EQ(t.mode, ShadingMode::PathTracing);
    EXPECT_EQ(t.spp, 40);
    EXPECT_EQ(t.name, "mcpt40");
    EXPECT_THROW(parse_fidelity("mcpt0"), std::invalid_argument);
    EXPECT_THROW(parse_fidelity("mcptx"), std::invalid_argument);
    EXPECT_THROW(parse_fidelity("phong"), std::invalid_argument);
}

TEST(Fidelity, DefaultsAreTheSevenTiers) {
    std::vector<std::string> names;
    for (const auto& f : default_fidelities()) names.push_back(f.name);
    EXPECT_EQ(names, (std::vector<std::string>{"lambertian", "cook_torrance", "mcpt10", "mcpt40", "mcpt70", "mcpt100",
                                               "mcpt130"}));
}

TEST(ExperimentConfig, IniRoundTripIsStable) {
    const ExperimentConfig a = ExperimentConfig::defaults();
    EXPECT_NO_THROW(a.validate());
    const std::string text = a.to_ini().to_string();
    const ExperimentConfig b = ExperimentConfig::from_ini(KeyValueConfig::parse(text));
    EXPECT_EQ(b.to_ini().to_string(), text);
    EXPECT_EQ(b.fidelities, a.fidelities);
    EXPECT_EQ(b.scene.region, a.scene.region);
    EXPECT_EQ(b.lighting.sun.direction, a.lighting.sun.direction);
    EXPECT_NEAR(b.camera.vertical_fov, a.camera.vertical_fov, 1e-15);
}

TEST(ExperimentConfig, ParsesDegreesAndRejectsUnknownKeys) {
    const ExperimentConfig c = ExperimentConfig::from_ini(
        KeyValueConfig::parse("[camera]\npitch_deg = 10\nvfov_deg = 45\n[dataset]\nn_scenes = 5\nfidelities = lambertian, mcpt7\n"));
    EXPECT_NEAR(c.camera.pitch, 10 * kPi / 180, 1e-15);
    EXPECT_NEAR(c.camera.vertical_fov, kPi / 4, 1e-15);
    EXPECT_EQ(c.n_scenes, 5);
    ASSERT_EQ(c.fidelities.size(), 2u);
    EXPECT_EQ(c.fidelities[1].spp, 7);
    EXPECT_THROW(ExperimentConfig::from_ini(KeyValueConfig::parse("[camera]\nzoom = 2\n")), std::invalid_argument);
    EXPECT_THROW(ExperimentConfig::from_ini(KeyValueConfig::parse("[nonsense]\na = 1\n")), std::invalid_argument);
    EXPECT_THROW(ExperimentConfig::from_ini(KeyValueConfig::parse("[dataset]\nn_scenes = 0\n")), std::invalid_argument);
    EXPECT_THROW(ExperimentConfig::from_ini(KeyValueConfig::parse("[target]\ncamera.zoom = 2\n")), std::invalid_argument);
}

TEST(ExperimentConfig, TargetDomainAppliesOverrides) {
    ExperimentConfig c = ExperimentConfig::defaults();
    ASSERT_FALSE(c.target_overrides.empty());
    const ExperimentConfig t = c.target_domain();
    EXPECT_TRUE(t.target_overrides.empty());
    EXPECT_TRUE(t.medium.enabled);
    EXPECT_FALSE(c.medium.enabled);
    EXPECT_NE(t.catalog_seed, c.catalog_seed);
    EXPECT_EQ(t.camera.width, c.camera.width);
    c.target_overrides = {{"camera.height", "2.5"}};
    EXPECT_EQ(c.target_domain().camera.height, 2.5);
    c.target_overrides = {{"nodot", "1"}};
    EXPECT_THROW(c.target_domain(), std::invalid_argument);
}

TEST(Digest, Sha256KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto dir = scratch_dir("digest");
    std::ofstream(dir / "f") << "abc";
    EXPECT_EQ(sha256_file(dir / "f"), sha256_hex("abc"));
    EXPECT_THROW(sha256_file(dir / "missing"), std::runtime_error);
}

TEST(CameraPolicy, PlacesCameraAtStreetLevelOverRoad) {
    const ExperimentConfig c = ExperimentConfig::defaults();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SceneState s = sample_scene(c.scene, 100 + seed);
        const Camera cam = choose_camera(s, c.camera, seed);
        EXPECT_NO_THROW(cam.validate());
        EXPECT_DOUBLE_EQ(cam.position.z, c.camera.height);
        EXPECT_TRUE(s.roads.is_road(s.roads.cell_of({cam.position.x, cam.position.y})));
        EXPECT_NEAR(cam.look_at.z, cam.position.z, 1e-12);  // pitch 0
        EXPECT_EQ(choose_camera(s, c.camera, seed).position, cam.position);
    }
}

TEST(Dataset, GeneratesVerifiesAndRegeneratesBitIdentically) {
    const auto dir = scratch_dir("dataset");
    const ExperimentConfig cfg = tiny_config(2, {"lambertian", "cook_torrance", "mcpt3"});
    const DatasetManifest m = generate_dataset(cfg, dir / "a", "tiny");
    EXPECT_TRUE(m.complete());
    ASSERT_EQ(m.frames.size(), 6u);
    EXPECT_TRUE(verify_manifest(m).empty());
    EXPECT_EQ(m.frames_for("mcpt3").size(), 2u);
    EXPECT_EQ(m.frames[0].scene_seed, 500u);
    EXPECT_EQ(m.frames[5].scene_seed, 501u);

    // Groundtruth files are shared byte-for-byte across fidelities of a scene.
    for (int s = 0; s < 2; ++s) {
        const FrameEntry* first = nullptr;
        for (const auto& f : m.frames) {
            if (f.scene_index != s) continue;
            if (!first) {
                first = &f;
                continue;
            }
            EXPECT_EQ(f.labels.sha256, first->labels.sha256);
            EXPECT_EQ(f.depth.sha256, first->depth.sha256);
            EXPECT_EQ(f.normals.sha256, first->normals.sha256);
            if (f.mode == ShadingMode::PathTracing) EXPECT_NE(f.rgb.sha256, first->rgb.sha256);
        }
    }

    const DatasetManifest loaded = load_manifest(dir / "a");
    EXPECT_EQ(loaded.frames.size(), m.frames.size());
    EXPECT_EQ(loaded.dataset_id, "tiny");
    EXPECT_EQ(loaded.fidelities, m.fidelities);

    const DatasetManifest again = regenerate_from_snapshot(dir / "a" / kManifestFile, dir / "b");
    ASSERT_EQ(again.frames.size(), m.frames.size());
    for (std::size_t i = 0; i < m.frames.size(); ++i) {
        for (auto member : {&FrameEntry::rgb, &FrameEntry::labels, &FrameEntry::depth, &FrameEntry::normals,
                            &FrameEntry::metadata}) {
            EXPECT_EQ((again.frames[i].*member).sha256, (m.frames[i].*member).sha256);
            EXPECT_EQ(slurp(dir / "b" / (again.frames[i].*member).path), slurp(dir / "a" / (m.frames[i].*member).path));
        }
    }
    EXPECT_EQ(slurp(dir / "b" / kManifestFile), slurp(dir / "a" / kManifestFile));

    const auto frames = load_frames(loaded, "lambertian");
    ASSERT_EQ(frames.size(), 2u);
    EXPECT_EQ(frames[0].rgb.width(), 24);
    EXPECT_THROW(load_frames(loaded, "mcpt99"), std::runtime_error);
}

TEST(Dataset, SingleSceneSingleFidelityHasOneEntry) {
    const auto dir = scratch_dir("dataset_one");
    const DatasetManifest m = generate_dataset(tiny_config(1, {"lambertian"}), dir, "one");
    EXPECT_EQ(m.frames.size(), 1u);
    EXPECT_TRUE(std::filesystem::exists(dir / kSnapshotFile));
    EXPECT_TRUE(std::filesystem::exists(dir / "scenes" / "scene_0000.txt"));
}

TEST(Dataset, VerificationDetectsTamperingAndMissingFiles) {
    const auto dir = scratch_dir("dataset_tamper");
    DatasetManifest m = generate_dataset(tiny_config(1, {"lambertian", "mcpt2"}), dir, "t");
    {
        std::fstream f(dir / m.frames[0].rgb.path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-5, std::ios::end);
        f.put('\x42');
    }
    std::filesystem::remove(dir / m.frames[1].depth.path);
    const auto problems = verify_manifest(load_manifest(dir));
    ASSERT_EQ(problems.size(), 2u);
    EXPECT_NE(problems[0].find(m.frames[0].rgb.path), std::string::npos) << problems[0];
    EXPECT_NE(problems[1].find(m.frames[1].depth.path), std::string::npos) << problems[1];
}

TEST(Dataset, ManifestLoaderRejectsMalformedFiles) {
    const auto dir = scratch_dir("dataset_bad");
    std::ofstream(dir / kManifestFile) << "#format=something-else\n";
    EXPECT_THROW(load_manifest(dir), std::runtime_error);
    EXPECT_THROW(load_manifest(dir / "nothing_here"), std::runtime_error);
}

TEST(Report, ValueLookupAndCsvShape) {
    ExperimentReport r;
    r.kind = "k";
    r.axis = "axis";
    r.metrics = {"m1", "m2"};
    r.rows = {{"a", {0.5, 1.0}}, {"b", {0.25, std::nan("")}}};
    r.info = {{"seed", "3"}};
    EXPECT_EQ(r.value("b", "m1"), 0.25);
    EXPECT_THROW(r.value("c", "m1"), std::out_of_range);
    EXPECT_THROW(r.value("a", "m3"), std::out_of_range);
    std::ostringstream os;
    r.write_csv(os);
    const std::string s = os.str();
    EXPECT_NE(s.find("#kind=k\n"), std::string::npos);
    EXPECT_NE(s.find("#seed=3\n"), std::string::npos);
    EXPECT_NE(s.find("axis,m1,m2\na,0.5,1\nb,0.25,nan\n"), std::string::npos) << s;
}

TEST(Experiments, SweepOnIdenticalDataIsPerfectAndSelfDivergenceIsZero) {
    const auto dir = scratch_dir("sweep");
    const DatasetManifest m = generate_dataset(tiny_config(2, {"lambertian", "mcpt2"}), dir, "sweep");
    const auto test = load_frames(m, "lambertian");
    const SweepResult sweep = run_fidelity_sweep(m, test);
    ASSERT_EQ(sweep.report.rows.size(), 2u);
    ASSERT_EQ(sweep.models.size(), 2u);
    EXPECT_EQ(sweep.report.rows[0].axis_value, "lambertian");
    EXPECT_EQ(sweep.report.value("lambertian", "histogram_tv"), 0.0);
    EXPECT_GT(sweep.report.value("mcpt2", "histogram_tv"), 0.0);
    EXPECT_EQ(sweep.report.metrics.front(), "mean_iou");
    EXPECT_EQ(sweep.report.metrics.size(), 8u);

    const auto synth = synthetic_set(3, 0, 1);
    std::vector<NamedModel> perfect{{"p", train(synth)}};
    EXPECT_EQ(iou(evaluate(perfect[0].second, synth)).mean, 1.0);
    const ExperimentReport tri = run_trimap_experiment(perfect, synth, {1, 2, 5, 10, 40});
    ASSERT_EQ(tri.rows.size(), 5u);
    for (const auto& row : tri.rows) EXPECT_EQ(row.values[0], 1.0);
    EXPECT_THROW(run_trimap_experiment(perfect, synth, {5, 1}), std::invalid_argument);
}

TEST(Experiments, TrimapSaturatedRowEqualsGlobalIou) {
    const auto train_set = synthetic_set(3, 60, 2);
    const auto test = synthetic_set(2, 90, 3);
    const std::vector<NamedModel> models{{"m", train(train_set)}};
    const ExperimentReport r = run_trimap_experiment(models, test, {1, 10, 26});
    EXPECT_EQ(r.rows.back().values[0], iou(evaluate(models[0].second, test)).mean);
    bool found = false;
    for (const auto& [k, v] : r.info) found |= k == "global_iou_m";
    EXPECT_TRUE(found);
}

TEST(Experiments, AdaptationReportHasTableShapeAndBlendZeroMatchesSimOnly) {
    const auto sim = synthetic_set(8, 20, 4);
    const auto target_train = synthetic_set(4, 40, 5, 30);
    const auto target_test = synthetic_set(3, 40, 6, 30);
    const ExperimentReport r = run_adaptation_experiment(sim, target_train, target_test, AdaptationOptions{});
    ASSERT_EQ(r.rows.size(), 3u + 6u + 1u);
    EXPECT_EQ(r.rows[0].axis_value, "target_only");
    EXPECT_EQ(r.rows[1].axis_value, "sim_small");
    EXPECT_EQ(r.rows[2].axis_value, "sim_full");
    EXPECT_EQ(r.rows.back().axis_value, "sim_full+finetune");
    EXPECT_EQ(r.value("sim_full+finetune@0", "mean_iou"), r.value("sim_full", "mean_iou"));
    EXPECT_GE(r.value("sim_full+finetune", "validation_iou"), r.value("sim_full+finetune@0", "validation_iou"));
    EXPECT_THROW(run_adaptation_experiment(sim, target_train, target_test, AdaptationOptions{0.0}), std::invalid_argument);
    EXPECT_THROW(run_adaptation_experiment({}, target_train, target_test, AdaptationOptions{}), std::invalid_argument);
}
