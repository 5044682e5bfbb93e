#include "urbansim/scene/scene_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "urbansim/core/text.hpp"

namespace urbansim {

namespace {

void write_object(std::ostream& os, const SceneObject& o) {
    os << name_of(o.mark.category) << ' ' << format_double(o.position.x) << ' ' << format_double(o.position.y) << ' '
       << o.mark.asset_index << ' ' << format_double(o.mark.scale) << ' ' << format_double(o.mark.orientation);
    if (o.destination) {
        os << ' ' << format_double(o.destination->x) << ' ' << format_double(o.destination->y) << ' ' << o.path.size();
        for (Vec2 w : o.path) os << ' ' << format_double(w.x) << ' ' << format_double(w.y);
    }
    os << '\n';
}

class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}

    std::vector<std::string> fields(std::string_view expect_tag = {}) {
        std::string line;
        if (!std::getline(is_, line)) fail("unexpected end of record");
        ++line_no_;
        auto f = split_ws(line);
        if (!expect_tag.empty() && (f.empty() || f[0] != expect_tag))
            fail("expected '" + std::string(expect_tag) + "'");
        return f;
    }

    std::string raw() {
        std::string line;
        if (!std::getline(is_, line)) fail("unexpected end of record");
        ++line_no_;
        return std::string(trim(line));
    }

    int line_no() const { return line_no_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("scene record line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& is_;
    int line_no_ = 0;
};

SceneObject parse_object(const std::vector<std::string>& f, bool dynamic, const LineReader& r) {
    if (f.size() < 6) r.fail("object line has too few fields");
    SceneObject o;
    const auto cat = parse_category(f[0]);
    if (!cat) r.fail("unknown category '" + f[0] + "'");
    o.mark.category = *cat;
    o.position = {parse_double(f[1]), parse_double(f[2])};
    o.mark.asset_index = static_cast<int>(parse_int(f[3]));
    o.mark.scale = parse_double(f[4]);
    o.mark.orientation = parse_double(f[5]);
    if (dynamic) {
        if (f.size() < 9) r.fail("dynamic object line has too few fields");
        o.destination = Vec2{parse_double(f[6]), parse_double(f[7])};
        const auto n = static_cast<std::size_t>(parse_int(f[8]));
        if (f.size() != 9 + 2 * n) r.fail("path length does not match waypoint count");
        for (std::size_t i = 0; i < n; ++i) o.path.push_back({parse_double(f[9 + 2 * i]), parse_double(f[10 + 2 * i])});
    } else if (f.size() != 6) {
        r.fail("static object line has extra fields");
    }
    return o;
}

}  // namespace

void write_scene(std::ostream& os, const SceneState& s) {
    os << "urbansim-scene " << kSceneFormatVersion << '\n';
    os << "seed " << s.seed << '\n';
    os << "region " << format_double(s.region.min_corner.x) << ' ' << format_double(s.region.min_corner.y) << ' '
       << format_double(s.region.max_corner.x) << ' ' << format_double(s.region.max_corner.y) << '\n';
    os << "time_fraction " << format_double(s.time_fraction) << '\n';
    const RoadNetwork& r = s.roads;
    os << "roads " << format_double(r.origin().x) << ' ' << format_double(r.origin().y) << ' '
       << format_double(r.cell_size()) << ' ' << r.nx() << ' ' << r.ny() << '\n';
    for (int y = 0; y < r.ny(); ++y) {
        std::string row(static_cast<std::size_t>(r.nx()), '.');
        for (int x = 0; x < r.nx(); ++x)
            if (r.is_road(GridCell{x, y})) row[x] = '#';
        os << row << '\n';
    }
    os << "static " << s.static_objects.size() << ' ' << s.dropped_static << '\n';
    for (const auto& o : s.static_objects) write_object(os, o);
    os << "dynamic " << s.dynamic_objects.size() << ' ' << s.dropped_dynamic << '\n';
    for (const auto& o : s.dynamic_objects) write_object(os, o);
}

std::string scene_to_string(const SceneState& scene) {
    std::ostringstream os;
    write_scene(os, scene);
    return os.str();
}

namespace {

SceneState read_scene_body(LineReader& r) {
    SceneState s;
    auto header = r.fields("urbansim-scene");
    if (header.size() != 2 || parse_int(header[1]) != kSceneFormatVersion) r.fail("unsupported scene format version");
    auto f = r.fields("seed");
    s.seed = parse_u64(f.at(1));
    f = r.fields("region");
    if (f.size() != 5) r.fail("region needs 4 numbers");
    s.region = {{parse_double(f[1]), parse_double(f[2])}, {parse_double(f[3]), parse_double(f[4])}};
    f = r.fields("time_fraction");
    s.time_fraction = parse_double(f.at(1));
    f = r.fields("roads");
    if (f.size() != 6) r.fail("roads needs 5 fields");
    const Vec2 origin{parse_double(f[1]), parse_double(f[2])};
    const double cell = parse_double(f[3]);
    const int nx = static_cast<int>(parse_int(f[4]));
    const int ny = static_cast<int>(parse_int(f[5]));
    if (nx <= 0 || ny <= 0) r.fail("road lattice must be non-empty");
    std::vector<std::uint8_t> occ;
    occ.reserve(static_cast<std::size_t>(nx) * ny);
    for (int y = 0; y < ny; ++y) {
        const std::string row = r.raw();
        if (static_cast<int>(row.size()) != nx) r.fail("road row has wrong width");
        for (char c : row) {
            if (c != '#' && c != '.') r.fail("road row contains invalid character");
            occ.push_back(c == '#' ? 1 : 0);
        }
    }
    s.roads = RoadNetwork(origin, cell, nx, ny, std::move(occ));

    f = r.fields("static");
    if (f.size() != 3) r.fail("static header needs count and dropped");
    const auto ns = parse_int(f[1]);
    s.dropped_static = static_cast<int>(parse_int(f[2]));
    for (long long i = 0; i < ns; ++i) s.static_objects.push_back(parse_object(r.fields(), false, r));
    f = r.fields("dynamic");
    if (f.size() != 3) r.fail("dynamic header needs count and dropped");
    const auto nd = parse_int(f[1]);
    s.dropped_dynamic = static_cast<int>(parse_int(f[2]));
    for (long long i = 0; i < nd; ++i) s.dynamic_objects.push_back(parse_object(r.fields(), true, r));
    return s;
}

}  // namespace

SceneState read_scene(std::istream& is) {
    LineReader r(is);
    try {
        return read_scene_body(r);
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
}

SceneState scene_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_scene(is);
}

void save_scene(const std::filesystem::path& path, const SceneState& scene) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_scene(out, scene);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SceneState load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_scene(in);
}

}  // namespace urbansim
