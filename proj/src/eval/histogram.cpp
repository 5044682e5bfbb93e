#include "urbansim/eval/histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace urbansim {

std::uint8_t gray_level(Rgb8 c) {
    const double y = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    return static_cast<std::uint8_t>(std::min(255L, std::lround(y)));
}

void HistogramAccumulator::add(const Image<Rgb8>& image) {
    for (const Rgb8& c : image.pixels()) ++counts_[gray_level(c)];
    total_ += image.size();
}

Histogram HistogramAccumulator::normalized() const {
    if (total_ == 0) throw std::invalid_argument("histogram: no pixels counted");
    Histogram h;
    for (std::size_t i = 0; i < counts_.size(); ++i) h.mass[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    return h;
}

Histogram intensity_histogram(const std::vector<Image<Rgb8>>& images) {
    if (images.empty()) throw std::invalid_argument("intensity_histogram: empty image set");
    HistogramAccumulator acc;
    for (const auto& im : images) acc.add(im);
    return acc.normalized();
}

double histogram_divergence(const Histogram& a, const Histogram& b) {
    if (a.mass.size() != b.mass.size()) throw std::invalid_argument("histogram_divergence: bin count mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.mass.size(); ++i) sum += std::abs(a.mass[i] - b.mass[i]);
    return 0.5 * sum;
}

}  // namespace urbansim
