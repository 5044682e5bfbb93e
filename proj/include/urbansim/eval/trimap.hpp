#pragma once

#include <cstdint>
#include <vector>

#include "urbansim/core/labels.hpp"

namespace urbansim {

/// Band of pixels around groundtruth label boundaries.
struct Trimap {
    Image<std::uint8_t> mask;  ///< 1 inside the band
    int width_px = 0;

    std::size_t count() const;
};

/// 1 where some 4-neighbor carries a different class.
Image<std::uint8_t> boundary_pixels(const LabelMap& gt);

/// Exact Chebyshev distance (in pixels) to the nearest set pixel of `seeds`.
/// Pixels with no seed in the image get INT32_MAX.
Image<std::int32_t> chebyshev_distance(const Image<std::uint8_t>& seeds);

/// Band of half-width `width_px` centered on the boundary between classes:
/// a pixel is in the band when its Chebyshev distance to a boundary pixel is
/// below width_px. Throws std::invalid_argument when width_px < 1.
Trimap build_trimap(const LabelMap& gt, int width_px);

struct CurvePoint {
    int width_px = 0;
    double mean_iou = 0.0;
    std::uint64_t pixels = 0;  ///< non-void pixels evaluated
};

/// One pooled mean IoU per width. A width of at least the image diagonal
/// evaluates every pixel, reproducing the unmasked mean IoU.
std::vector<CurvePoint> iou_vs_trimap_curve(const std::vector<LabelMap>& preds, const std::vector<LabelMap>& gts,
                                            const std::vector<int>& widths);

}  // namespace urbansim
