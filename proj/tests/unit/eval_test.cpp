#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "test_support.hpp"
#include "urbansim/eval/confusion.hpp"
#include "urbansim/eval/histogram.hpp"
#include "urbansim/eval/report.hpp"
#include "urbansim/eval/trimap.hpp"

using namespace urbansim;
using namespace urbansim::testing;

namespace {

constexpr ClassId A = ClassId::Building;
constexpr ClassId B = ClassId::Tree;

LabelMap from_rows(std::initializer_list<std::initializer_list<ClassId>> rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.begin()->size());
    LabelMap m(w, h);
    int y = 0;
    for (const auto& row : rows) {
        int x = 0;
        for (ClassId c : row) m(x++, y) = c;
        ++y;
    }
    return m;
}

LabelMap vertical_split(int w, int h, int left_cols, ClassId left, ClassId right) {
    LabelMap m(w, h, right);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < left_cols; ++x) m(x, y) = left;
    return m;
}

Image<Rgb8> random_image(int w, int h, Pcg32& rng) {
    Image<Rgb8> img(w, h);
    for (auto& p : img.pixels())
        p = {static_cast<std::uint8_t>(rng.bounded(256)), static_cast<std::uint8_t>(rng.bounded(256)),
             static_cast<std::uint8_t>(rng.bounded(256))};
    return img;
}

Histogram random_histogram(Pcg32& rng) {
    Histogram h;
    double total = 0;
    for (double& m : h.mass) total += (m = rng.uniform() < 0.3 ? rng.uniform() : 0.0);
    for (double& m : h.mass) m /= total;
    return h;
}

}  // namespace

TEST(Confusion, PerfectPredictionHasNoErrors) {
    Pcg32 rng(1, 1);
    const LabelMap gt = random_labels(9, 7, 6, rng);
    const ConfusionCounts c = accumulate_confusion(gt, gt);
    for (int k = 0; k < kNumClasses; ++k) {
        EXPECT_EQ(c.fp[k], 0u);
        EXPECT_EQ(c.fn[k], 0u);
    }
    const IouResult r = iou(c);
    for (int k = 0; k < kNumClasses; ++k)
        if (r.per_class[k]) EXPECT_EQ(*r.per_class[k], 1.0);
    EXPECT_EQ(r.mean, 1.0);
}

TEST(Confusion, HandEnumeratedTwoByTwo) {
    const LabelMap gt = from_rows({{A, A}, {B, B}});
    const LabelMap pred = from_rows({{A, B}, {B, B}});
    const ConfusionCounts c = accumulate_confusion(pred, gt);
    EXPECT_EQ(c.tp[index_of(A)], 1u);
    EXPECT_EQ(c.fp[index_of(A)], 0u);
    EXPECT_EQ(c.fn[index_of(A)], 1u);
    EXPECT_EQ(c.tp[index_of(B)], 2u);
    EXPECT_EQ(c.fp[index_of(B)], 1u);
    EXPECT_EQ(c.fn[index_of(B)], 0u);
    const IouResult r = iou(c);
    EXPECT_EQ(*r.per_class[index_of(A)], 0.5);
    EXPECT_EQ(*r.per_class[index_of(B)], 2.0 / 3.0);
    EXPECT_NEAR(r.mean, 7.0 / 12.0, 1e-15);
    EXPECT_EQ(r.classes_in_mean, 2);
    EXPECT_FALSE(r.per_class[index_of(ClassId::Sky)]);
}

TEST(Confusion, AllVoidGroundtruthCountsNothing) {
    const LabelMap gt(4, 4, ClassId::Void);
    const LabelMap pred(4, 4, A);
    EXPECT_EQ(accumulate_confusion(pred, gt), ConfusionCounts{});
    EXPECT_TRUE(std::isnan(iou(ConfusionCounts{}).mean));
    EXPECT_EQ(iou(ConfusionCounts{}).classes_in_mean, 0);
}

TEST(Confusion, DisjointPredictionScoresZero) {
    const IouResult r = iou(accumulate_confusion(LabelMap(3, 3, A), LabelMap(3, 3, B)));
    EXPECT_EQ(*r.per_class[index_of(A)], 0.0);
    EXPECT_EQ(*r.per_class[index_of(B)], 0.0);
    EXPECT_EQ(r.mean, 0.0);
}

TEST(Confusion, VoidPredictionIsMissOnly) {
    const LabelMap gt(2, 1, A);
    const LabelMap pred = from_rows({{A, ClassId::Void}});
    const ConfusionCounts c = accumulate_confusion(pred, gt);
    EXPECT_EQ(c.fn[index_of(A)], 1u);
    EXPECT_EQ(c.fp[index_of(ClassId::Void)], 0u);
    EXPECT_EQ(c.tp[index_of(ClassId::Void)], 0u);
}

TEST(Confusion, ShapeMismatchThrows) {
    EXPECT_THROW(accumulate_confusion(LabelMap(3, 3), LabelMap(3, 4)), std::invalid_argument);
    Trimap t{Image<std::uint8_t>(2, 2), 1};
    EXPECT_THROW(accumulate_confusion(LabelMap(3, 3), LabelMap(3, 3), &t), std::invalid_argument);
}

TEST(Confusion, PooledCountsMatchBruteForceOnRandomSets) {
    Pcg32 rng(2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        ConfusionCounts pooled;
        BruteIou oracle;
        for (int i = 0; i < 3; ++i) {
            const LabelMap gt = random_labels(16, 16, 7, rng);
            const LabelMap pred = random_labels(16, 16, 7, rng);
            pooled += accumulate_confusion(pred, gt);
            oracle.add(pred, gt);
        }
        EXPECT_EQ(pooled.tp, oracle.tp);
        EXPECT_EQ(pooled.fp, oracle.fp);
        EXPECT_EQ(pooled.fn, oracle.fn);
        EXPECT_NEAR(iou(pooled).mean, oracle.mean(), 1e-12);
    }
}

TEST(Confusion, MergeIsCommutativeAndAssociative) {
    Pcg32 rng(3, 3);
    std::vector<ConfusionCounts> parts;
    for (int i = 0; i < 3; ++i)
        parts.push_back(accumulate_confusion(random_labels(8, 8, 7, rng), random_labels(8, 8, 7, rng)));
    ConfusionCounts ab = parts[0];
    ab += parts[1];
    ab += parts[2];
    ConfusionCounts cb = parts[2];
    ConfusionCounts tail = parts[1];
    tail += parts[0];
    cb += tail;
    EXPECT_EQ(ab, cb);
}

TEST(Confusion, VoidingGroundtruthNeverIncreasesCounts) {
    Pcg32 rng(4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        LabelMap gt = random_labels(10, 10, 6, rng);
        const LabelMap pred = random_labels(10, 10, 7, rng);
        const ConfusionCounts before = accumulate_confusion(pred, gt);
        gt[rng.bounded(100)] = ClassId::Void;
        const ConfusionCounts after = accumulate_confusion(pred, gt);
        for (int k = 0; k < kNumClasses; ++k) {
            EXPECT_LE(after.tp[k], before.tp[k]);
            EXPECT_LE(after.fp[k], before.fp[k]);
            EXPECT_LE(after.fn[k], before.fn[k]);
        }
    }
}

TEST(Confusion, IouLiesInUnitIntervalAndIsOneOnlyForExactMatch) {
    Pcg32 rng(5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const LabelMap gt = random_labels(6, 6, 3, rng);
        LabelMap pred = gt;
        if (trial % 2) pred[rng.bounded(36)] = static_cast<ClassId>(3 + rng.bounded(3));
        const IouResult r = iou(accumulate_confusion(pred, gt));
        for (const auto& v : r.per_class)
            if (v) {
                EXPECT_GE(*v, 0.0);
                EXPECT_LE(*v, 1.0);
            }
        EXPECT_EQ(r.mean == 1.0, pred == gt);
    }
}

TEST(Trimap, UniformGroundtruthHasEmptyBand) {
    const Trimap t = build_trimap(LabelMap(12, 9, A), 3);
    EXPECT_EQ(t.count(), 0u);
    EXPECT_EQ(t.width_px, 3);
}

TEST(Trimap, VerticalSplitWidthTwoMasksColumnsThreeToSix) {
    const Trimap t = build_trimap(vertical_split(10, 10, 5, A, B), 2);
    EXPECT_EQ(t.count(), 40u);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 10; ++x) EXPECT_EQ(t.mask(x, y), (x >= 3 && x <= 6) ? 1 : 0) << x << "," << y;
}

TEST(Trimap, RejectsNonPositiveWidth) {
    EXPECT_THROW(build_trimap(LabelMap(4, 4), 0), std::invalid_argument);
}

TEST(Trimap, DistanceTransformIsExactChebyshev) {
    Pcg32 rng(6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        Image<std::uint8_t> seeds(13, 11);
        for (auto& s : seeds.pixels()) s = rng.uniform() < 0.04 ? 1 : 0;
        const Image<std::int32_t> d = chebyshev_distance(seeds);
        for (int y = 0; y < 11; ++y)
            for (int x = 0; x < 13; ++x) {
                int best = INT32_MAX;
                for (int sy = 0; sy < 11; ++sy)
                    for (int sx = 0; sx < 13; ++sx)
                        if (seeds(sx, sy)) best = std::min(best, std::max(std::abs(sx - x), std::abs(sy - y)));
                ASSERT_EQ(d(x, y), best);
            }
    }
}

TEST(Trimap, BandsMatchBruteForceAndAreNested) {
    Pcg32 rng(7, 7);
    for (int trial = 0; trial < 20; ++trial) {
        const LabelMap gt = blocky_labels(24, 20, rng);
        Image<std::uint8_t> prev(24, 20);
        for (int w : {1, 2, 5, 10, 20}) {
            const Trimap t = build_trimap(gt, w);
            ASSERT_EQ(t.mask, brute_band(gt, w)) << "w=" << w;
            for (std::size_t i = 0; i < prev.size(); ++i) EXPECT_LE(prev[i], t.mask[i]);
            prev = t.mask;
        }
    }
}

TEST(TrimapCurve, SaturatedWidthEqualsGlobalIouBitwise) {
    Pcg32 rng(8, 8);
    std::vector<LabelMap> preds, gts;
    ConfusionCounts global;
    for (int i = 0; i < 4; ++i) {
        gts.push_back(blocky_labels(20, 15, rng));
        preds.push_back(random_labels(20, 15, 7, rng));
        global += accumulate_confusion(preds.back(), gts.back());
    }
    const int diag = static_cast<int>(std::ceil(std::hypot(20, 15)));
    const auto curve = iou_vs_trimap_curve(preds, gts, {1, 5, diag, 1000});
    ASSERT_EQ(curve.size(), 4u);
    EXPECT_EQ(curve[2].mean_iou, iou(global).mean);
    EXPECT_EQ(curve[3].mean_iou, iou(global).mean);
    std::uint64_t non_void = 0;
    for (const auto& g : gts)
        for (ClassId c : g.pixels()) non_void += c != ClassId::Void;
    EXPECT_EQ(curve[3].pixels, non_void);
}

TEST(TrimapCurve, MatchesBruteForceBandIou) {
    Pcg32 rng(9, 9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<LabelMap> preds, gts;
        for (int i = 0; i < 2; ++i) {
            gts.push_back(blocky_labels(16, 16, rng));
            preds.push_back(random_labels(16, 16, 7, rng));
        }
        const std::vector<int> widths{1, 2, 5, 10, 20};
        const auto curve = iou_vs_trimap_curve(preds, gts, widths);
        for (std::size_t k = 0; k < widths.size(); ++k) {
            BruteIou oracle;
            for (std::size_t i = 0; i < gts.size(); ++i) {
                const auto band = brute_band(gts[i], widths[k]);
                oracle.add(preds[i], gts[i], &band);
            }
            const double expected = oracle.mean();
            if (std::isnan(expected))
                EXPECT_TRUE(std::isnan(curve[k].mean_iou));
            else
                EXPECT_NEAR(curve[k].mean_iou, expected, 1e-12);
        }
    }
}

TEST(TrimapCurve, BoundaryErrorsMakeCurveIncreasing) {
    const LabelMap gt = vertical_split(32, 32, 16, A, B);
    LabelMap pred = gt;
    for (int y = 0; y < 32; ++y) {
        pred(15, y) = B;
        pred(16, y) = A;
    }
    std::vector<int> widths;
    for (int w = 1; w <= 16; ++w) widths.push_back(w);
    const auto curve = iou_vs_trimap_curve({pred}, {gt}, widths);
    for (std::size_t k = 1; k < curve.size(); ++k) EXPECT_GT(curve[k].mean_iou, curve[k - 1].mean_iou) << k;
    EXPECT_EQ(curve[0].mean_iou, 0.0);
}

TEST(TrimapCurve, PerfectPredictionIsOneAtEveryWidth) {
    Pcg32 rng(10, 10);
    const LabelMap gt = blocky_labels(20, 20, rng);
    for (const auto& p : iou_vs_trimap_curve({gt}, {gt}, {1, 3, 7}))
        if (p.pixels > 0) EXPECT_EQ(p.mean_iou, 1.0);
}

TEST(Histogram, ConstantGrayImageFillsOneBin) {
    const Histogram h = intensity_histogram({Image<Rgb8>(5, 5, Rgb8{128, 128, 128})});
    EXPECT_EQ(h.mass[128], 1.0);
    EXPECT_EQ(gray_level({255, 255, 255}), 255);
    EXPECT_EQ(gray_level({255, 0, 0}), 76);
    EXPECT_EQ(gray_level({0, 255, 0}), 150);
    EXPECT_EQ(gray_level({0, 0, 255}), 29);
}

TEST(Histogram, BlackAndWhitePoolEqually) {
    const Histogram h = intensity_histogram({Image<Rgb8>(4, 4, Rgb8{0, 0, 0}), Image<Rgb8>(4, 4, Rgb8{255, 255, 255})});
    EXPECT_EQ(h.mass[0], 0.5);
    EXPECT_EQ(h.mass[255], 0.5);
}

TEST(Histogram, EmptySetThrows) {
    EXPECT_THROW(intensity_histogram({}), std::invalid_argument);
    EXPECT_THROW(HistogramAccumulator{}.normalized(), std::invalid_argument);
}

TEST(Histogram, MatchesBruteForcePoolingAndSumsToOne) {
    Pcg32 rng(11, 11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Image<Rgb8>> set;
        std::array<double, 256> counts{};
        double total = 0;
        for (int i = 0; i < 3; ++i) {
            set.push_back(random_image(16, 16, rng));
            for (const Rgb8& p : set.back().pixels()) {
                counts[static_cast<std::size_t>(std::lround(0.299 * p.r + 0.587 * p.g + 0.114 * p.b))] += 1;
                total += 1;
            }
        }
        const Histogram h = intensity_histogram(set);
        double sum = 0;
        for (int b = 0; b < 256; ++b) {
            EXPECT_NEAR(h.mass[b], counts[b] / total, 1e-12);
            sum += h.mass[b];
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(HistogramDivergence, HandExamples) {
    Histogram a, b, c;
    a.mass[0] = 0.5;
    a.mass[255] = 0.5;
    b.mass[0] = 1.0;
    c.mass[7] = 1.0;
    EXPECT_EQ(histogram_divergence(a, a), 0.0);
    EXPECT_EQ(histogram_divergence(a, b), 0.5);
    EXPECT_EQ(histogram_divergence(b, c), 1.0);
    Histogram short_h;
    short_h.mass.resize(10);
    EXPECT_THROW(histogram_divergence(a, short_h), std::invalid_argument);
}

TEST(HistogramDivergence, IsAMetricOnRandomTriples) {
    Pcg32 rng(12, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const Histogram x = random_histogram(rng), y = random_histogram(rng), z = random_histogram(rng);
        const double xy = histogram_divergence(x, y);
        EXPECT_EQ(xy, histogram_divergence(y, x));
        EXPECT_GE(xy, 0.0);
        EXPECT_LE(xy, 1.0 + 1e-12);
        EXPECT_EQ(histogram_divergence(x, x), 0.0);
        EXPECT_LE(histogram_divergence(x, z), xy + histogram_divergence(y, z) + 1e-12);
        double oracle = 0;
        for (int b = 0; b < 256; ++b) oracle += std::abs(x.mass[b] - y.mass[b]);
        EXPECT_NEAR(xy, 0.5 * oracle, 1e-12);
    }
}

TEST(Report, IouRowsWriteNanForUndefinedClasses) {
    std::ostringstream os;
    write_iou_header(os);
    write_iou_row(os, "run", iou(accumulate_confusion(from_rows({{A, B}}), from_rows({{A, B}}))));
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "name,building,pedestrian,tree,vehicle,ground,sky,mean");
    EXPECT_NE(text.find("run,1,nan,1,nan,nan,nan,1"), std::string::npos) << text;
}

TEST(Report, CurveCsvAndSvgAreWellFormed) {
    std::ostringstream csv;
    write_curve_csv(csv, {{1, 0.5, 10}, {2, 0.75, 20}});
    EXPECT_EQ(csv.str(), "width_px,mean_iou,pixels\n1,0.5,10\n2,0.75,20\n");
    std::ostringstream svg;
    write_svg_plot(svg, "t", "x", "y", {{"a<b", {{0, 0}, {1, 1}}}, {"c", {{0, 1}}}});
    const std::string s = svg.str();
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_NE(s.find("a&lt;b"), std::string::npos);
    EXPECT_NE(s.find("<polyline"), std::string::npos);
}
