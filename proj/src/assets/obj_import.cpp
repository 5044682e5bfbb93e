#include "urbansim/assets/obj_import.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "urbansim/core/text.hpp"

namespace urbansim {

namespace {

long resolve(long idx, std::size_t count, int line_no) {
    const long n = static_cast<long>(count);
    const long r = idx > 0 ? idx - 1 : n + idx;
    if (idx == 0 || r < 0 || r >= n)
        throw std::runtime_error("OBJ line " + std::to_string(line_no) + ": index " + std::to_string(idx) +
                                 " out of range");
    return r;
}

}  // namespace

Mesh import_obj(std::istream& in, ClassId class_id, bool y_up) {
    std::vector<Vec3> positions;
    std::vector<Vec2> texcoords;
    Mesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto f = split_ws(line);
        if (f.empty() || f[0][0] == '#') continue;
        try {
            if (f[0] == "v") {
                if (f.size() < 4) throw std::runtime_error("vertex needs 3 coordinates");
                const double x = parse_double(f[1]), y = parse_double(f[2]), z = parse_double(f[3]);
                positions.push_back(y_up ? Vec3{x, -z, y} : Vec3{x, y, z});
            } else if (f[0] == "vt") {
                if (f.size() < 3) throw std::runtime_error("texcoord needs 2 coordinates");
                texcoords.push_back({parse_double(f[1]), parse_double(f[2])});
            } else if (f[0] == "f") {
                if (f.size() < 4) throw std::runtime_error("face needs at least 3 vertices");
                std::vector<std::uint32_t> corners;
                for (std::size_t i = 1; i < f.size(); ++i) {
                    const auto parts = split(f[i], '/');
                    const long vi = resolve(parse_int(parts[0]), positions.size(), line_no);
                    Vec2 uv{};
                    if (parts.size() > 1 && !parts[1].empty())
                        uv = texcoords[resolve(parse_int(parts[1]), texcoords.size(), line_no)];
                    corners.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
                    mesh.vertices.push_back(positions[vi]);
                    mesh.uvs.push_back(uv);
                }
                for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
                    mesh.triangles.push_back({corners[0], corners[i], corners[i + 1]});
                    mesh.classes.push_back(class_id);
                    if (!(mesh.triangle_area(mesh.triangles.size() - 1) > kMinTriangleArea)) {
                        mesh.triangles.pop_back();
                        mesh.classes.pop_back();
                    }
                }
            }
            // Other records (vn, o, g, s, usemtl, mtllib) carry nothing we use.
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("OBJ line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (mesh.triangles.empty()) throw std::runtime_error("OBJ: no usable faces");
    return mesh;
}

Mesh import_obj(const std::filesystem::path& path, ClassId class_id, bool y_up) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return import_obj(in, class_id, y_up);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

}  // namespace urbansim
