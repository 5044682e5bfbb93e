#include "urbansim/probe/features.hpp"

#include <algorithm>
#include <cmath>

namespace urbansim {

double linearize(std::uint8_t v) {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) t[i] = std::pow(i / 255.0, 2.2);
        return t;
    }();
    return table[v];
}

std::vector<PixelFeatures> extract_features(const Image<Rgb8>& image) {
    const int w = image.width(), h = image.height();
    std::vector<std::array<double, 3>> lin(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) lin[i] = {linearize(image[i].r), linearize(image[i].g), linearize(image[i].b)};

    std::vector<PixelFeatures> out(image.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::array<double, 3> sum{}, sum2{};
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = std::clamp(x + dx, 0, w - 1), ny = std::clamp(y + dy, 0, h - 1);
                    const auto& v = lin[image.index(nx, ny)];
                    for (int c = 0; c < 3; ++c) {
                        sum[c] += v[c];
                        sum2[c] += v[c] * v[c];
                    }
                }
            PixelFeatures& f = out[image.index(x, y)];
            const auto& v = lin[image.index(x, y)];
            for (int c = 0; c < 3; ++c) {
                const double mean = sum[c] / 9.0;
                f[c] = v[c];
                f[3 + c] = mean;
                f[6 + c] = std::sqrt(std::max(0.0, sum2[c] / 9.0 - mean * mean));
            }
            f[9] = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
        }
    return out;
}

}  // namespace urbansim
