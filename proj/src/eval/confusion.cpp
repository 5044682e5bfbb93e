#include "urbansim/eval/confusion.hpp"

#include <limits>
#include <stdexcept>

#include "urbansim/eval/trimap.hpp"

namespace urbansim {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
    for (int c = 0; c < kNumClasses; ++c) {
        tp[c] += other.tp[c];
        fp[c] += other.fp[c];
        fn[c] += other.fn[c];
    }
    return *this;
}

ConfusionCounts accumulate_confusion(const LabelMap& pred, const LabelMap& gt, const Trimap* mask) {
    if (!pred.same_shape(gt)) throw std::invalid_argument("accumulate_confusion: prediction and groundtruth differ in size");
    if (mask && !mask->mask.same_shape(gt)) throw std::invalid_argument("accumulate_confusion: trimap differs in size");
    ConfusionCounts counts;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (gt[i] == ClassId::Void) continue;
        if (mask && !mask->mask[i]) continue;
        const auto g = static_cast<std::size_t>(gt[i]);
        const auto p = static_cast<std::size_t>(pred[i]);
        if (g >= kNumClasses || p >= kNumClasses) throw std::invalid_argument("accumulate_confusion: label outside palette");
        if (p == g) {
            ++counts.tp[g];
        } else {
            ++counts.fn[g];
            if (pred[i] != ClassId::Void) ++counts.fp[p];
        }
    }
    return counts;
}

IouResult iou(const ConfusionCounts& counts) {
    IouResult r;
    double sum = 0.0;
    for (int c = 0; c < kNumClasses; ++c) {
        if (static_cast<ClassId>(c) == ClassId::Void) continue;
        const std::uint64_t denom = counts.tp[c] + counts.fp[c] + counts.fn[c];
        if (denom == 0) continue;
        const double v = static_cast<double>(counts.tp[c]) / static_cast<double>(denom);
        r.per_class[c] = v;
        sum += v;
        ++r.classes_in_mean;
    }
    r.mean = r.classes_in_mean > 0 ? sum / r.classes_in_mean : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace urbansim
