#include "urbansim/scene/point_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urbansim {

void Region::validate() const {
    if (!(max_corner.x > min_corner.x) || !(max_corner.y > min_corner.y))
        throw std::invalid_argument("Region: max_corner must exceed min_corner on both axes");
}

void PointProcessConfig::validate() const {
    if (!std::isfinite(intensity) || intensity < 0.0)
        throw std::invalid_argument("PointProcessConfig: intensity must be finite and non-negative");
    for (double r : hard_core_radius)
        if (!(r >= 0.0)) throw std::invalid_argument("PointProcessConfig: hard-core radius must be >= 0");
    if (max_rejection_rounds < 1) throw std::invalid_argument("PointProcessConfig: max_rejection_rounds must be >= 1");
}

void MarkPriors::validate() const {
    double sum = 0.0;
    for (int c = 0; c < kNumCategories; ++c) {
        const double w = category_weights[c];
        if (!(w >= 0.0)) throw std::invalid_argument("MarkPriors: negative category weight");
        sum += w;
        if (w > 0.0) {
            if (asset_counts[c] < 1)
                throw std::invalid_argument("MarkPriors: category '" + std::string(name_of(Category(c))) +
                                            "' has weight but no assets");
            if (!(scale_range[c].lo > 0.0) || scale_range[c].hi < scale_range[c].lo)
                throw std::invalid_argument("MarkPriors: scale range must be positive and ordered");
        }
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("MarkPriors: category weights must sum to 1");
    if (orientation_range.hi < orientation_range.lo)
        throw std::invalid_argument("MarkPriors: orientation range must be ordered");
}

void SceneConfig::validate() const {
    region.validate();
    static_process.validate();
    dynamic_process.validate();
    if (static_process.intensity > 0.0) static_marks.validate();
    if (dynamic_process.intensity > 0.0) dynamic_marks.validate();
    if (!(static_road_clearance >= 0.0)) throw std::invalid_argument("SceneConfig: negative road clearance");
    if (!(time_fraction >= 0.0 && time_fraction <= 1.0))
        throw std::invalid_argument("SceneConfig: time_fraction must lie in [0, 1]");
}

Vec2 posed_position(const SceneObject& object, double fraction) {
    if (!object.destination || object.path.empty() || fraction <= 0.0) return object.position;
    std::vector<Vec2> poly;
    poly.reserve(object.path.size() + 1);
    poly.push_back(object.position);
    for (std::size_t i = 1; i + 1 < object.path.size(); ++i) poly.push_back(object.path[i]);
    poly.push_back(*object.destination);

    double total = 0.0;
    for (std::size_t i = 1; i < poly.size(); ++i) total += distance(poly[i - 1], poly[i]);
    double remaining = std::min(fraction, 1.0) * total;
    for (std::size_t i = 1; i < poly.size(); ++i) {
        const double seg = distance(poly[i - 1], poly[i]);
        if (remaining <= seg && seg > 0.0) return poly[i - 1] + (remaining / seg) * (poly[i] - poly[i - 1]);
        remaining -= seg;
    }
    return poly.back();
}

CellDomain::CellDomain(const RoadNetwork& lattice, std::vector<GridCell> cells)
    : origin_(lattice.origin()), cell_size_(lattice.cell_size()), nx_(lattice.nx()), cells_(std::move(cells)) {
    member_.assign(static_cast<std::size_t>(lattice.nx()) * lattice.ny(), 0);
    for (GridCell c : cells_) member_[lattice.index(c)] = 1;
}

double CellDomain::area() const { return static_cast<double>(cells_.size()) * cell_size_ * cell_size_; }

bool CellDomain::contains(Vec2 p) const {
    const int x = static_cast<int>(std::floor((p.x - origin_.x) / cell_size_));
    const int y = static_cast<int>(std::floor((p.y - origin_.y) / cell_size_));
    if (x < 0 || y < 0 || x >= nx_) return false;
    const std::size_t i = static_cast<std::size_t>(y) * nx_ + x;
    return i < member_.size() && member_[i] != 0;
}

Vec2 CellDomain::sample(Pcg32& rng) const {
    if (cells_.empty()) throw std::logic_error("CellDomain::sample on empty domain");
    const GridCell c = cells_[rng.bounded(static_cast<std::uint32_t>(cells_.size()))];
    const double u = rng.uniform();
    const double v = rng.uniform();
    return {origin_.x + (c.x + u) * cell_size_, origin_.y + (c.y + v) * cell_size_};
}

CellDomain road_domain(const RoadNetwork& roads) { return CellDomain(roads, roads.road_cells()); }

CellDomain off_road_domain(const RoadNetwork& roads, int clearance_cells) {
    const auto dist = road_distance_field(roads);
    std::vector<GridCell> cells;
    for (int i = 0; i < roads.nx() * roads.ny(); ++i)
        if (dist[i] > clearance_cells) cells.push_back(roads.cell_at(i));
    return CellDomain(roads, std::move(cells));
}

std::uint64_t sample_poisson(double mean, Pcg32& rng) {
    if (!(mean > 0.0)) return 0;
    constexpr double kChunk = 64.0;  // keeps exp(-mean) far from underflow
    std::uint64_t total = 0;
    double left = mean;
    while (left > 0.0) {
        const double m = std::min(left, kChunk);
        left -= m;
        const double u = rng.uniform();
        double p = std::exp(-m);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf && p > 0.0) {
            ++k;
            p *= m / static_cast<double>(k);
            cdf += p;
        }
        total += k;
    }
    return total;
}

std::uint64_t sample_count(const PointProcessConfig& config, double area, Pcg32& rng) {
    if (config.intensity == 0.0) return 0;
    return sample_poisson(config.intensity * area, rng);
}

std::uint64_t sample_count(const PointProcessConfig& config, const Region& region, Pcg32& rng) {
    return sample_count(config, region.area(), rng);
}

std::vector<Vec2> sample_locations(std::size_t n, const Region& region, Pcg32& rng) {
    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(region.min_corner.x, region.max_corner.x);
        const double y = rng.uniform(region.min_corner.y, region.max_corner.y);
        out.push_back({x, y});
    }
    return out;
}

std::vector<Vec2> sample_locations(std::size_t n, const CellDomain& domain, Pcg32& rng) {
    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(domain.sample(rng));
    return out;
}

std::vector<Mark> sample_marks(std::size_t n, const MarkPriors& priors, Pcg32& rng) {
    std::vector<Mark> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        int cat = kNumCategories - 1;
        double cdf = 0.0;
        for (int c = 0; c < kNumCategories; ++c) {
            cdf += priors.category_weights[c];
            if (u < cdf) {
                cat = c;
                break;
            }
        }
        // Guard against rounding in the cdf: fall back to the last category with weight.
        while (priors.category_weights[cat] <= 0.0 && cat > 0) --cat;

        Mark m;
        m.category = static_cast<Category>(cat);
        m.asset_index = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(priors.asset_counts[cat])));
        m.scale = rng.uniform(priors.scale_range[cat].lo, priors.scale_range[cat].hi);
        m.orientation = rng.uniform(priors.orientation_range.lo, priors.orientation_range.hi);
        out.push_back(m);
    }
    return out;
}

RepulsionResult apply_repulsion(std::vector<SceneObject> objects, const PointProcessConfig& config,
                                const LocationSampler& resample, Pcg32& rng) {
    RepulsionResult result;
    result.objects.reserve(objects.size());
    auto conflicts = [&](const SceneObject& cand) {
        for (const SceneObject& other : result.objects)
            if (distance(cand.position, other.position) < config.pair_distance(cand.mark.category, other.mark.category))
                return true;
        return false;
    };
    for (SceneObject& obj : objects) {
        bool placed = !conflicts(obj);
        for (int round = 0; !placed && round < config.max_rejection_rounds; ++round) {
            obj.position = resample(rng);
            placed = !conflicts(obj);
        }
        if (placed)
            result.objects.push_back(std::move(obj));
        else
            ++result.dropped;
    }
    return result;
}

RepulsionResult apply_repulsion(std::vector<SceneObject> objects, const PointProcessConfig& config,
                                const Region& region, Pcg32& rng) {
    return apply_repulsion(
        std::move(objects), config,
        [&region](Pcg32& r) {
            const double x = r.uniform(region.min_corner.x, region.max_corner.x);
            const double y = r.uniform(region.min_corner.y, region.max_corner.y);
            return Vec2{x, y};
        },
        rng);
}

namespace {

std::vector<SceneObject> combine(const std::vector<Vec2>& positions, const std::vector<Mark>& marks) {
    std::vector<SceneObject> out(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out[i].position = positions[i];
        out[i].mark = marks[i];
    }
    return out;
}

}  // namespace

SceneState sample_scene(const SceneConfig& config, const RoadNetwork& roads, std::uint64_t seed) {
    config.validate();
    SceneState scene;
    scene.seed = seed;
    scene.region = config.region;
    scene.roads = roads;
    scene.time_fraction = config.time_fraction;

    {
        const int clearance = static_cast<int>(std::ceil(config.static_road_clearance / roads.cell_size()));
        const CellDomain domain = off_road_domain(roads, clearance);
        auto count_rng = make_stream(seed, RngStream::StaticCount);
        auto loc_rng = make_stream(seed, RngStream::StaticLocations);
        auto mark_rng = make_stream(seed, RngStream::StaticMarks);
        auto rep_rng = make_stream(seed, RngStream::StaticRepulsion);
        const std::size_t n = domain.empty() ? 0 : sample_count(config.static_process, domain.area(), count_rng);
        auto objects = combine(sample_locations(n, domain, loc_rng), sample_marks(n, config.static_marks, mark_rng));
        auto rep = apply_repulsion(std::move(objects), config.static_process,
                                   [&domain](Pcg32& r) { return domain.sample(r); }, rep_rng);
        scene.static_objects = std::move(rep.objects);
        scene.dropped_static = rep.dropped;
    }

    {
        const CellDomain domain = road_domain(roads);
        auto count_rng = make_stream(seed, RngStream::DynamicCount);
        auto loc_rng = make_stream(seed, RngStream::DynamicLocations);
        auto mark_rng = make_stream(seed, RngStream::DynamicMarks);
        auto rep_rng = make_stream(seed, RngStream::DynamicRepulsion);
        auto dest_rng = make_stream(seed, RngStream::DynamicDestinations);
        const std::size_t n = sample_count(config.dynamic_process, domain.area(), count_rng);
        auto objects = combine(sample_locations(n, domain, loc_rng), sample_marks(n, config.dynamic_marks, mark_rng));
        auto rep = apply_repulsion(std::move(objects), config.dynamic_process,
                                   [&domain](Pcg32& r) { return domain.sample(r); }, rep_rng);
        for (SceneObject& obj : rep.objects) {
            obj.destination = domain.sample(dest_rng);
            if (auto path = plan_path(roads, obj.position, *obj.destination)) obj.path = std::move(*path);
        }
        scene.dynamic_objects = std::move(rep.objects);
        scene.dropped_dynamic = rep.dropped;
    }
    return scene;
}

SceneState sample_scene(const SceneConfig& config, std::uint64_t seed) {
    return sample_scene(config, make_manhattan_roads(config.region, config.roads), seed);
}

}  // namespace urbansim
