#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "urbansim/scene/types.hpp"

namespace urbansim {

/// Plain-text scene record, format version 1:
///
///     urbansim-scene 1
///     seed <u64>
///     region <min_x> <min_y> <max_x> <max_y>
///     time_fraction <f>
///     roads <origin_x> <origin_y> <cell_size> <nx> <ny>
///     <ny lattice rows, row y=0 first, '#' road / '.' other>
///     static <count> <dropped>
///     <category> <x> <y> <asset_index> <scale> <orientation>
///     dynamic <count> <dropped>
///     <category> <x> <y> <asset_index> <scale> <orientation> <dest_x> <dest_y> <n> <x1> <y1> ... <xn> <yn>
///
/// Numbers use the shortest round-trip decimal form, so parsing a record
/// reproduces the SceneState exactly.
inline constexpr int kSceneFormatVersion = 1;

void write_scene(std::ostream& os, const SceneState& scene);
std::string scene_to_string(const SceneState& scene);
SceneState read_scene(std::istream& is);
SceneState scene_from_string(const std::string& text);
void save_scene(const std::filesystem::path& path, const SceneState& scene);
SceneState load_scene(const std::filesystem::path& path);

}  // namespace urbansim
