#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "urbansim/eval/confusion.hpp"
#include "urbansim/eval/histogram.hpp"
#include "urbansim/eval/report.hpp"
#include "urbansim/experiments/dataset.hpp"
#include "urbansim/probe/gaussian_model.hpp"

namespace urbansim {

struct ReportRow {
    std::string axis_value;
    std::vector<double> values;  ///< parallel to ExperimentReport::metrics
};

/// One metric row per axis value plus free-form header records.
struct ExperimentReport {
    std::string kind;
    std::string axis;
    std::vector<std::string> metrics;
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::string, std::string>> info;
    double runtime_seconds = 0.0;

    /// Throws std::out_of_range for unknown names.
    double value(const std::string& axis_value, const std::string& metric) const;

    /// "#key=value" header lines, then "axis,metric..." and one line per row.
    void write_csv(std::ostream& os) const;
    void save_csv(const std::filesystem::path& path) const;
};

using NamedModel = std::pair<std::string, GaussianClassModel>;

ConfusionCounts evaluate(const GaussianClassModel& model, const std::vector<LabeledImage>& test);
GaussianClassModel train(const std::vector<LabeledImage>& set);

struct SweepResult {
    ExperimentReport report;
    std::vector<NamedModel> models;  ///< one per fidelity, report order
};

/// Trains one probe per fidelity of `train` and evaluates each on `test`.
/// Rows: fidelity; metrics: mean IoU, per-class IoU, and the total variation
/// distance between the fidelity's gray-level histogram and the test set's.
SweepResult run_fidelity_sweep(const DatasetManifest& train, const std::vector<LabeledImage>& test,
                               std::vector<std::string> fidelities = {});

/// Rows: trimap width; metrics: mean IoU of each model inside the band.
/// Header records carry each model's unmasked IoU. Widths must be ascending.
ExperimentReport run_trimap_experiment(const std::vector<NamedModel>& models, const std::vector<LabeledImage>& test,
                                       const std::vector<int>& widths);

struct AdaptationOptions {
    double target_fraction = 0.5;     ///< share of target-train scenes used for fine-tuning
    double sim_small_fraction = 0.25; ///< share of sim scenes for the reduced sim row
    std::vector<double> blends{0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
};

/// Rows: target_only, sim_small, sim_full, then sim_full+finetune at each
/// blend, and sim_full+finetune (the blend chosen on held-out target-train
/// scenes). Metrics: test mean IoU, validation mean IoU, blend.
ExperimentReport run_adaptation_experiment(const std::vector<LabeledImage>& sim, const std::vector<LabeledImage>& target_train,
                                           const std::vector<LabeledImage>& target_test, const AdaptationOptions& options);

/// Histogram of the display images of a set.
Histogram set_histogram(const std::vector<LabeledImage>& set);

/// One SVG per report: metric `metric` against row order or numeric axis.
void save_report_plot(const ExperimentReport& report, const std::vector<std::string>& metrics,
                      const std::filesystem::path& path, const std::string& y_label);

}  // namespace urbansim
