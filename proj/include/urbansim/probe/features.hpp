#pragma once

#include <array>
#include <vector>

#include "urbansim/core/image.hpp"

namespace urbansim {

inline constexpr int kFeatureDims = 10;
using PixelFeatures = std::array<double, kFeatureDims>;

/// 8-bit display value to linear intensity, (v/255)^2.2.
double linearize(std::uint8_t v);

/// Per pixel: linear RGB, 3x3 mean and standard deviation of linear RGB
/// (edges clamped), and the row coordinate y/(H-1) (0 for one-row images).
/// Row-major order, one entry per pixel.
std::vector<PixelFeatures> extract_features(const Image<Rgb8>& image);

}  // namespace urbansim
