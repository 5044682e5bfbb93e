#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "urbansim/core/labels.hpp"
#include "urbansim/probe/features.hpp"

namespace urbansim {

inline constexpr double kVarianceFloor = 1e-6;

struct ClassStats {
    bool seen = false;
    double prior = 0.0;
    double count = 0.0;  ///< training pixels (blended after fine-tuning)
    PixelFeatures mean{};
    PixelFeatures second_moment{};  ///< E[x^2] per dimension

    double variance(int d) const;
    friend bool operator==(const ClassStats&, const ClassStats&) = default;
};

/// Sums of features per class; merges by addition.
class StatsAccumulator {
public:
    /// Skips void pixels. Throws std::invalid_argument on shape mismatch.
    void add(const Image<Rgb8>& image, const LabelMap& labels);
    StatsAccumulator& operator+=(const StatsAccumulator& other);
    std::uint64_t total() const;

    std::array<std::uint64_t, kNumClasses> counts{};
    std::array<PixelFeatures, kNumClasses> sum{};
    std::array<PixelFeatures, kNumClasses> sum_sq{};
};

/// Diagonal Gaussian naive Bayes over PixelFeatures.
class GaussianClassModel {
public:
    GaussianClassModel() = default;

    /// Throws std::invalid_argument when no non-void pixel is available.
    static GaussianClassModel from_stats(const StatsAccumulator& stats);

    const ClassStats& stats(ClassId c) const { return classes_[static_cast<std::size_t>(c)]; }
    bool seen(ClassId c) const { return stats(c).seen; }

    /// Log prior plus log likelihood; -inf for unseen classes.
    double log_posterior(ClassId c, const PixelFeatures& f) const;
    /// Highest posterior; ties go to the lowest class id.
    ClassId classify(const PixelFeatures& f) const;

    void write(std::ostream& os) const;
    static GaussianClassModel read(std::istream& is);
    void save(const std::filesystem::path& path) const;
    static GaussianClassModel load(const std::filesystem::path& path);

    friend bool operator==(const GaussianClassModel&, const GaussianClassModel&) = default;

private:
    friend GaussianClassModel fine_tune(const GaussianClassModel&, const std::vector<Image<Rgb8>>&,
                                        const std::vector<LabelMap>&, double);
    std::array<ClassStats, kNumClasses> classes_{};
};

/// Pooled statistics over a labeled set. Throws if the set is empty or the
/// sizes differ.
GaussianClassModel train(const std::vector<Image<Rgb8>>& images, const std::vector<LabelMap>& labels);

/// new = (1 - blend) * old + blend * stats(small set), per class on means,
/// second moments, counts and priors. Classes missing from the small set
/// keep their statistics with prior scaled by (1 - blend).
GaussianClassModel fine_tune(const GaussianClassModel& model, const std::vector<Image<Rgb8>>& images,
                             const std::vector<LabelMap>& labels, double blend);

LabelMap predict(const GaussianClassModel& model, const Image<Rgb8>& image);

}  // namespace urbansim
