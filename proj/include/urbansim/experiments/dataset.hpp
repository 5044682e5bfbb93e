#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "urbansim/experiments/experiment_config.hpp"

namespace urbansim {

struct FileRecord {
    std::string path;  ///< relative to the manifest directory
    std::string sha256;
};

struct FrameEntry {
    int scene_index = 0;
    std::uint64_t scene_seed = 0;
    std::string fidelity;
    ShadingMode mode = ShadingMode::Lambertian;
    int spp = 1;
    bool complete = false;
    std::string error;  ///< empty when complete
    FileRecord rgb, labels, depth, normals, metadata;
};

struct DatasetManifest {
    std::string dataset_id;
    int n_scenes = 0;
    std::uint64_t base_seed = 0;
    std::vector<std::string> fidelities;
    FileRecord config_snapshot;
    std::vector<FrameEntry> frames;
    std::filesystem::path root;  ///< directory holding manifest.csv

    bool complete() const;
    /// Complete frames of one fidelity, ordered by scene index.
    std::vector<const FrameEntry*> frames_for(const std::string& fidelity) const;
};

inline constexpr const char* kManifestFile = "manifest.csv";
inline constexpr const char* kSnapshotFile = "config_snapshot.ini";

/// Samples config.n_scenes scenes (seed = base_seed + index) and renders each
/// under every configured fidelity from the same scene state and camera.
/// Writes RGB and label PNGs, depth and normal PFMs, a metadata sidecar per
/// frame, the scene file, the config snapshot and manifest.csv under
/// `out_dir`. A frame that fails is recorded as incomplete; the rest proceed.
DatasetManifest generate_dataset(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                 const std::string& dataset_id);

void write_manifest(const DatasetManifest& manifest);
/// Accepts the manifest file or its directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Missing files and digest mismatches, one message each; empty when intact.
std::vector<std::string> verify_manifest(const DatasetManifest& manifest);

/// Generates a fresh copy of a dataset from its config snapshot alone.
DatasetManifest regenerate_from_snapshot(const std::filesystem::path& manifest_path, const std::filesystem::path& out_dir);

struct LabeledImage {
    Image<Rgb8> rgb;
    LabelMap labels;
};

/// Images and labels of one fidelity. Throws if a frame is incomplete or missing.
std::vector<LabeledImage> load_frames(const DatasetManifest& manifest, const std::string& fidelity);

}  // namespace urbansim
