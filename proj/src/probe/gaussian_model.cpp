#include "urbansim/probe/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "urbansim/core/math.hpp"
#include "urbansim/core/text.hpp"

namespace urbansim {

namespace {

constexpr const char* kMagic = "urbansim-probe";
constexpr int kVersion = 1;

}  // namespace

double ClassStats::variance(int d) const {
    return std::max(kVarianceFloor, second_moment[d] - mean[d] * mean[d]);
}

void StatsAccumulator::add(const Image<Rgb8>& image, const LabelMap& labels) {
    if (!image.same_shape(labels)) throw std::invalid_argument("train: image and label map differ in size");
    const auto features = extract_features(image);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == ClassId::Void) continue;
        const auto c = static_cast<std::size_t>(labels[i]);
        if (c >= kNumClasses) throw std::invalid_argument("train: label outside palette");
        ++counts[c];
        for (int d = 0; d < kFeatureDims; ++d) {
            sum[c][d] += features[i][d];
            sum_sq[c][d] += features[i][d] * features[i][d];
        }
    }
}

StatsAccumulator& StatsAccumulator::operator+=(const StatsAccumulator& other) {
    for (int c = 0; c < kNumClasses; ++c) {
        counts[c] += other.counts[c];
        for (int d = 0; d < kFeatureDims; ++d) {
            sum[c][d] += other.sum[c][d];
            sum_sq[c][d] += other.sum_sq[c][d];
        }
    }
    return *this;
}

std::uint64_t StatsAccumulator::total() const {
    std::uint64_t t = 0;
    for (auto n : counts) t += n;
    return t;
}

GaussianClassModel GaussianClassModel::from_stats(const StatsAccumulator& stats) {
    const std::uint64_t total = stats.total();
    if (total == 0) throw std::invalid_argument("train: no labeled (non-void) pixels");
    GaussianClassModel m;
    for (int c = 0; c < kNumClasses; ++c) {
        const std::uint64_t n = stats.counts[c];
        if (n == 0) continue;
        ClassStats& s = m.classes_[c];
        s.seen = true;
        s.count = static_cast<double>(n);
        s.prior = static_cast<double>(n) / static_cast<double>(total);
        for (int d = 0; d < kFeatureDims; ++d) {
            s.mean[d] = stats.sum[c][d] / static_cast<double>(n);
            s.second_moment[d] = stats.sum_sq[c][d] / static_cast<double>(n);
        }
    }
    return m;
}

double GaussianClassModel::log_posterior(ClassId c, const PixelFeatures& f) const {
    const ClassStats& s = stats(c);
    if (!s.seen || !(s.prior > 0.0)) return -std::numeric_limits<double>::infinity();
    double prior_total = 0.0;
    for (const auto& k : classes_)
        if (k.seen) prior_total += k.prior;
    double lp = std::log(s.prior / prior_total);
    for (int d = 0; d < kFeatureDims; ++d) {
        const double var = s.variance(d);
        const double diff = f[d] - s.mean[d];
        lp -= 0.5 * (std::log(2.0 * kPi * var) + diff * diff / var);
    }
    return lp;
}

ClassId GaussianClassModel::classify(const PixelFeatures& f) const {
    int best = -1;
    double best_lp = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < kNumClasses; ++c) {
        if (!classes_[c].seen) continue;
        const double lp = log_posterior(static_cast<ClassId>(c), f);
        if (best < 0 || lp > best_lp) {
            best = c;
            best_lp = lp;
        }
    }
    return best < 0 ? ClassId::Void : static_cast<ClassId>(best);
}

void GaussianClassModel::write(std::ostream& os) const {
    os << kMagic << ' ' << kVersion << '\n';
    os << "classes " << kNumClasses << " dims " << kFeatureDims << '\n';
    for (int c = 0; c < kNumClasses; ++c) {
        const ClassStats& s = classes_[c];
        os << "class " << c << " seen " << (s.seen ? 1 : 0) << " prior " << format_double(s.prior) << " count "
           << format_double(s.count) << '\n';
        os << "mean";
        for (double v : s.mean) os << ' ' << format_double(v);
        os << "\nsecond_moment";
        for (double v : s.second_moment) os << ' ' << format_double(v);
        os << '\n';
    }
}

GaussianClassModel GaussianClassModel::read(std::istream& is) {
    auto bad = [](const std::string& what) { return std::runtime_error("probe model: " + what); };
    std::string line;
    auto next = [&](const char* expect) {
        if (!std::getline(is, line)) throw bad(std::string("unexpected end of input, expected ") + expect);
        auto tok = split_ws(line);
        if (tok.empty() || tok[0] != expect) throw bad(std::string("expected '") + expect + "', got '" + line + "'");
        return tok;
    };
    auto head = next(kMagic);
    if (head.size() != 2 || parse_int(head[1]) != kVersion) throw bad("unsupported version");
    auto dims = next("classes");
    if (dims.size() != 4 || parse_int(dims[1]) != kNumClasses || parse_int(dims[3]) != kFeatureDims)
        throw bad("class or feature count mismatch");
    GaussianClassModel m;
    for (int c = 0; c < kNumClasses; ++c) {
        auto h = next("class");
        if (h.size() != 8 || parse_int(h[1]) != c) throw bad("malformed class header '" + line + "'");
        ClassStats& s = m.classes_[c];
        s.seen = parse_int(h[3]) != 0;
        s.prior = parse_double(h[5]);
        s.count = parse_double(h[7]);
        for (auto [key, target] : {std::pair{"mean", &s.mean}, std::pair{"second_moment", &s.second_moment}}) {
            auto v = next(key);
            if (v.size() != kFeatureDims + 1) throw bad(std::string("wrong number of values for ") + key);
            for (int d = 0; d < kFeatureDims; ++d) (*target)[d] = parse_double(v[d + 1]);
        }
    }
    return m;
}

void GaussianClassModel::save(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
    write(os);
}

GaussianClassModel GaussianClassModel::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error(path.string() + ": cannot open for reading");
    return read(is);
}

namespace {

StatsAccumulator accumulate(const std::vector<Image<Rgb8>>& images, const std::vector<LabelMap>& labels) {
    if (images.empty()) throw std::invalid_argument("train: empty training set");
    if (images.size() != labels.size()) throw std::invalid_argument("train: image/label count mismatch");
    StatsAccumulator acc;
    for (std::size_t i = 0; i < images.size(); ++i) acc.add(images[i], labels[i]);
    return acc;
}

}  // namespace

GaussianClassModel train(const std::vector<Image<Rgb8>>& images, const std::vector<LabelMap>& labels) {
    return GaussianClassModel::from_stats(accumulate(images, labels));
}

GaussianClassModel fine_tune(const GaussianClassModel& model, const std::vector<Image<Rgb8>>& images,
                             const std::vector<LabelMap>& labels, double blend) {
    if (!(blend >= 0.0 && blend <= 1.0)) throw std::invalid_argument("fine_tune: blend must lie in [0, 1]");
    if (blend == 0.0) return model;
    const GaussianClassModel target = train(images, labels);
    if (blend == 1.0) return target;

    GaussianClassModel out;
    const double keep = 1.0 - blend;
    for (int c = 0; c < kNumClasses; ++c) {
        const ClassStats& a = model.classes_[c];
        const ClassStats& b = target.classes_[c];
        ClassStats& s = out.classes_[c];
        if (!a.seen && !b.seen) continue;
        s.seen = true;
        if (!b.seen) {
            s = a;
            s.prior = keep * a.prior;
            s.count = keep * a.count;
            continue;
        }
        if (!a.seen) {
            s = b;
            s.prior = blend * b.prior;
            s.count = blend * b.count;
            continue;
        }
        s.prior = keep * a.prior + blend * b.prior;
        s.count = keep * a.count + blend * b.count;
        for (int d = 0; d < kFeatureDims; ++d) {
            s.mean[d] = keep * a.mean[d] + blend * b.mean[d];
            s.second_moment[d] = keep * a.second_moment[d] + blend * b.second_moment[d];
        }
    }
    return out;
}

LabelMap predict(const GaussianClassModel& model, const Image<Rgb8>& image) {
    const auto features = extract_features(image);
    LabelMap out(image.width(), image.height());
    for (std::size_t i = 0; i < features.size(); ++i) out[i] = model.classify(features[i]);
    return out;
}

}  // namespace urbansim
