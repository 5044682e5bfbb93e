#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "urbansim/core/image.hpp"

namespace urbansim {

/// Normalized gray-level histogram; bin index is the 8-bit gray level.
struct Histogram {
    std::vector<double> mass = std::vector<double>(256, 0.0);
};

/// round(0.299 R + 0.587 G + 0.114 B).
std::uint8_t gray_level(Rgb8 c);

/// Pools gray-level counts across images, one at a time.
class HistogramAccumulator {
public:
    void add(const Image<Rgb8>& image);
    std::uint64_t pixels() const { return total_; }
    /// Throws std::invalid_argument when no pixel was added.
    Histogram normalized() const;

private:
    std::array<std::uint64_t, 256> counts_{};
    std::uint64_t total_ = 0;
};

/// Throws std::invalid_argument for an empty set.
Histogram intensity_histogram(const std::vector<Image<Rgb8>>& images);

/// Total variation distance 0.5 * sum |a - b|. Throws on bin-count mismatch.
double histogram_divergence(const Histogram& a, const Histogram& b);

}  // namespace urbansim
