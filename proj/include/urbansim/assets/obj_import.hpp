#pragma once

#include <filesystem>
#include <iosfwd>

#include "urbansim/assets/mesh.hpp"

namespace urbansim {

/// Reads the vertex/face subset of Wavefront OBJ: `v`, `vt` and `f` records
/// (v, v/vt, v//vn, v/vt/vn; negative indices allowed; polygons fan-triangulated).
/// Every triangle gets `class_id`. Degenerate faces are skipped. The file's +y
/// axis is taken as up and mapped to +z.
Mesh import_obj(std::istream& in, ClassId class_id, bool y_up = true);
Mesh import_obj(const std::filesystem::path& path, ClassId class_id, bool y_up = true);

}  // namespace urbansim
