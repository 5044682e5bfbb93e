#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "urbansim/core/image.hpp"
#include "urbansim/core/labels.hpp"

namespace urbansim {

void write_png(const std::filesystem::path& path, const Image<Rgb8>& image);
Image<Rgb8> read_png(const std::filesystem::path& path);

/// Indexed-color PNG whose palette is class_palette().
void write_label_png(const std::filesystem::path& path, const LabelMap& labels);
/// Accepts any PNG whose colors all appear in class_palette().
LabelMap read_label_png(const std::filesystem::path& path);

/// Little-endian portable float maps, rows stored bottom to top.
void write_pfm(const std::filesystem::path& path, const Image<float>& image);
void write_pfm(const std::filesystem::path& path, const Image<Vec3f>& image);
void write_pfm(const std::filesystem::path& path, const Image<Rgb32f>& image);
Image<float> read_pfm_gray(const std::filesystem::path& path);
Image<Vec3f> read_pfm_vec3(const std::filesystem::path& path);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// One "key=value" line per entry.
void write_metadata(const std::filesystem::path& path, const Metadata& entries);
Metadata read_metadata(const std::filesystem::path& path);

}  // namespace urbansim
