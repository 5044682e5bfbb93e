#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "urbansim/core/labels.hpp"

namespace urbansim {

struct Trimap;

/// Per-class TP/FP/FN. Merges by componentwise addition.
struct ConfusionCounts {
    std::array<std::uint64_t, kNumClasses> tp{};
    std::array<std::uint64_t, kNumClasses> fp{};
    std::array<std::uint64_t, kNumClasses> fn{};

    ConfusionCounts& operator+=(const ConfusionCounts& other);
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Counts over pixels where gt is not void (and, with a mask, the band is
/// set). A void prediction is a miss for the gt class and a false positive
/// for nothing. Throws std::invalid_argument on shape mismatch.
ConfusionCounts accumulate_confusion(const LabelMap& pred, const LabelMap& gt, const Trimap* mask = nullptr);

struct IouResult {
    std::array<std::optional<double>, kNumClasses> per_class;  ///< empty: zero denominator or void
    double mean = 0.0;     ///< unweighted over defined classes; NaN when none is defined
    int classes_in_mean = 0;
};

IouResult iou(const ConfusionCounts& counts);

}  // namespace urbansim
