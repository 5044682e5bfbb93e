#include "urbansim/eval/trimap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "urbansim/eval/confusion.hpp"

namespace urbansim {

std::size_t Trimap::count() const {
    return static_cast<std::size_t>(std::count(mask.pixels().begin(), mask.pixels().end(), std::uint8_t{1}));
}

Image<std::uint8_t> boundary_pixels(const LabelMap& gt) {
    const int w = gt.width(), h = gt.height();
    Image<std::uint8_t> out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const ClassId c = gt(x, y);
            if ((x > 0 && gt(x - 1, y) != c) || (x + 1 < w && gt(x + 1, y) != c) || (y > 0 && gt(x, y - 1) != c) ||
                (y + 1 < h && gt(x, y + 1) != c))
                out(x, y) = 1;
        }
    return out;
}

Image<std::int32_t> chebyshev_distance(const Image<std::uint8_t>& seeds) {
    constexpr std::int32_t kFar = std::numeric_limits<std::int32_t>::max();
    const int w = seeds.width(), h = seeds.height();
    Image<std::int32_t> d(w, h, kFar);
    for (std::size_t i = 0; i < seeds.size(); ++i)
        if (seeds[i]) d[i] = 0;
    auto relax = [&](int x, int y, int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
        const std::int32_t v = d(nx, ny);
        if (v != kFar && v + 1 < d(x, y)) d(x, y) = v + 1;
    };
    // 8-neighbor unit-weight chamfer is exact for the Chebyshev metric.
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            relax(x, y, x - 1, y);
            relax(x, y, x - 1, y - 1);
            relax(x, y, x, y - 1);
            relax(x, y, x + 1, y - 1);
        }
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            relax(x, y, x + 1, y);
            relax(x, y, x + 1, y + 1);
            relax(x, y, x, y + 1);
            relax(x, y, x - 1, y + 1);
        }
    return d;
}

Trimap build_trimap(const LabelMap& gt, int width_px) {
    if (width_px < 1) throw std::invalid_argument("build_trimap: width_px must be >= 1");
    const Image<std::int32_t> d = chebyshev_distance(boundary_pixels(gt));
    Trimap t{Image<std::uint8_t>(gt.width(), gt.height()), width_px};
    for (std::size_t i = 0; i < d.size(); ++i) t.mask[i] = d[i] < width_px ? 1 : 0;
    return t;
}

std::vector<CurvePoint> iou_vs_trimap_curve(const std::vector<LabelMap>& preds, const std::vector<LabelMap>& gts,
                                            const std::vector<int>& widths) {
    if (preds.size() != gts.size()) throw std::invalid_argument("iou_vs_trimap_curve: prediction/groundtruth count mismatch");
    std::vector<CurvePoint> out;
    out.reserve(widths.size());
    for (int w : widths) {
        if (w < 1) throw std::invalid_argument("iou_vs_trimap_curve: widths must be >= 1");
        ConfusionCounts total;
        for (std::size_t i = 0; i < gts.size(); ++i) {
            const LabelMap& gt = gts[i];
            const double diagonal = std::hypot(gt.width(), gt.height());
            if (w >= diagonal) {
                total += accumulate_confusion(preds[i], gt);
            } else {
                const Trimap t = build_trimap(gt, w);
                total += accumulate_confusion(preds[i], gt, &t);
            }
        }
        std::uint64_t pixels = 0;
        for (int c = 0; c < kNumClasses; ++c) pixels += total.tp[c] + total.fn[c];
        out.push_back({w, iou(total).mean, pixels});
    }
    return out;
}

}  // namespace urbansim
