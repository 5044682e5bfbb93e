#include "urbansim/experiments/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "urbansim/core/text.hpp"
#include "urbansim/eval/histogram.hpp"
#include "urbansim/eval/trimap.hpp"

namespace urbansim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<LabeledImage> slice(const std::vector<LabeledImage>& v, std::size_t begin, std::size_t end) {
    return {v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::size_t share(std::size_t n, double fraction) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)), 1, n);
}

std::vector<Image<Rgb8>> images_of(const std::vector<LabeledImage>& set) {
    std::vector<Image<Rgb8>> out;
    for (const auto& s : set) out.push_back(s.rgb);
    return out;
}

std::vector<LabelMap> labels_of(const std::vector<LabeledImage>& set) {
    std::vector<LabelMap> out;
    for (const auto& s : set) out.push_back(s.labels);
    return out;
}

}  // namespace

double ExperimentReport::value(const std::string& axis_value, const std::string& metric) const {
    const auto m = std::find(metrics.begin(), metrics.end(), metric);
    if (m == metrics.end()) throw std::out_of_range("report " + kind + ": no metric '" + metric + "'");
    for (const auto& r : rows)
        if (r.axis_value == axis_value) return r.values[static_cast<std::size_t>(m - metrics.begin())];
    throw std::out_of_range("report " + kind + ": no row '" + axis_value + "'");
}

void ExperimentReport::write_csv(std::ostream& os) const {
    os << "#kind=" << kind << '\n';
    for (const auto& [k, v] : info) os << '#' << k << '=' << v << '\n';
    os << "#runtime_seconds=" << format_double(runtime_seconds) << '\n';
    os << axis;
    for (const auto& m : metrics) os << ',' << m;
    os << '\n';
    for (const auto& r : rows) {
        os << r.axis_value;
        for (double v : r.values) os << ',' << format_double(v);
        os << '\n';
    }
}

void ExperimentReport::save_csv(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
    write_csv(os);
    if (!os) throw std::runtime_error(path.string() + ": write failed");
}

ConfusionCounts evaluate(const GaussianClassModel& model, const std::vector<LabeledImage>& test) {
    ConfusionCounts total;
    for (const auto& s : test) total += accumulate_confusion(predict(model, s.rgb), s.labels);
    return total;
}

GaussianClassModel train(const std::vector<LabeledImage>& set) { return train(images_of(set), labels_of(set)); }

Histogram set_histogram(const std::vector<LabeledImage>& set) {
    HistogramAccumulator acc;
    for (const auto& s : set) acc.add(s.rgb);
    return acc.normalized();
}

SweepResult run_fidelity_sweep(const DatasetManifest& train_set, const std::vector<LabeledImage>& test,
                               std::vector<std::string> fidelities) {
    const auto t0 = Clock::now();
    if (test.empty()) throw std::invalid_argument("fidelity sweep: empty test set");
    if (fidelities.empty()) fidelities = train_set.fidelities;
    const Histogram test_hist = set_histogram(test);

    SweepResult out;
    ExperimentReport& r = out.report;
    r.kind = "fidelity_sweep";
    r.axis = "fidelity";
    r.metrics = {"mean_iou"};
    for (int c = 0; c < kNumClasses; ++c)
        if (static_cast<ClassId>(c) != ClassId::Void) r.metrics.push_back("iou_" + std::string(name_of(static_cast<ClassId>(c))));
    r.metrics.push_back("histogram_tv");
    r.info = {{"train_dataset", train_set.dataset_id},
              {"train_base_seed", std::to_string(train_set.base_seed)},
              {"train_scenes", std::to_string(train_set.n_scenes)},
              {"test_images", std::to_string(test.size())}};

    for (const auto& fid : fidelities) {
        const auto frames = load_frames(train_set, fid);
        GaussianClassModel model = train(frames);
        const IouResult res = iou(evaluate(model, test));
        ReportRow row{fid, {res.mean}};
        for (int c = 0; c < kNumClasses; ++c)
            if (static_cast<ClassId>(c) != ClassId::Void) row.values.push_back(res.per_class[c].value_or(kNaN));
        row.values.push_back(histogram_divergence(set_histogram(frames), test_hist));
        r.rows.push_back(std::move(row));
        out.models.emplace_back(fid, std::move(model));
    }
    r.runtime_seconds = seconds_since(t0);
    return out;
}

ExperimentReport run_trimap_experiment(const std::vector<NamedModel>& models, const std::vector<LabeledImage>& test,
                                       const std::vector<int>& widths) {
    const auto t0 = Clock::now();
    if (!std::is_sorted(widths.begin(), widths.end())) throw std::invalid_argument("trimap experiment: widths must be ascending");
    if (test.empty()) throw std::invalid_argument("trimap experiment: empty test set");
    ExperimentReport r;
    r.kind = "trimap";
    r.axis = "width_px";
    r.info = {{"test_images", std::to_string(test.size())}};
    const auto gts = labels_of(test);
    std::vector<std::vector<CurvePoint>> curves;
    for (const auto& [name, model] : models) {
        r.metrics.push_back("iou_" + name);
        std::vector<LabelMap> preds;
        for (const auto& s : test) preds.push_back(predict(model, s.rgb));
        curves.push_back(iou_vs_trimap_curve(preds, gts, widths));
        ConfusionCounts total;
        for (std::size_t i = 0; i < preds.size(); ++i) total += accumulate_confusion(preds[i], gts[i]);
        r.info.emplace_back("global_iou_" + name, format_double(iou(total).mean));
    }
    for (std::size_t w = 0; w < widths.size(); ++w) {
        ReportRow row{std::to_string(widths[w]), {}};
        for (const auto& c : curves) row.values.push_back(c[w].mean_iou);
        r.rows.push_back(std::move(row));
    }
    r.runtime_seconds = seconds_since(t0);
    return r;
}

ExperimentReport run_adaptation_experiment(const std::vector<LabeledImage>& sim, const std::vector<LabeledImage>& target_train,
                                           const std::vector<LabeledImage>& target_test, const AdaptationOptions& options) {
    const auto t0 = Clock::now();
    if (sim.empty() || target_train.empty() || target_test.empty())
        throw std::invalid_argument("adaptation experiment: every image set must be non-empty");
    if (!(options.target_fraction > 0.0 && options.target_fraction <= 1.0))
        throw std::invalid_argument("adaptation experiment: target fraction must lie in (0, 1]");
    if (!(options.sim_small_fraction > 0.0 && options.sim_small_fraction <= 1.0))
        throw std::invalid_argument("adaptation experiment: sim_small fraction must lie in (0, 1]");
    if (options.blends.empty()) throw std::invalid_argument("adaptation experiment: blend grid is empty");

    const std::size_t n_tune = share(target_train.size(), options.target_fraction);
    const auto tune_set = slice(target_train, 0, n_tune);
    // Blend selection uses target-train scenes held out from fine-tuning when
    // there are any, otherwise the fine-tuning scenes themselves.
    const auto val_set = n_tune < target_train.size() ? slice(target_train, n_tune, target_train.size()) : tune_set;
    const auto sim_small = slice(sim, 0, share(sim.size(), options.sim_small_fraction));

    ExperimentReport r;
    r.kind = "adaptation";
    r.axis = "configuration";
    r.metrics = {"mean_iou", "validation_iou", "blend"};
    r.info = {{"sim_images", std::to_string(sim.size())},
              {"sim_small_images", std::to_string(sim_small.size())},
              {"target_train_images", std::to_string(target_train.size())},
              {"finetune_images", std::to_string(tune_set.size())},
              {"validation_images", std::to_string(val_set.size())},
              {"validation_held_out", n_tune < target_train.size() ? "true" : "false"},
              {"target_test_images", std::to_string(target_test.size())}};

    auto add = [&](const std::string& name, const GaussianClassModel& m, double blend) {
        r.rows.push_back({name, {iou(evaluate(m, target_test)).mean, iou(evaluate(m, val_set)).mean, blend}});
    };
    add("target_only", train(target_train), kNaN);
    add("sim_small", train(sim_small), kNaN);
    const GaussianClassModel sim_model = train(sim);
    add("sim_full", sim_model, kNaN);

    std::size_t best = 0;
    double best_val = -1.0;
    std::vector<GaussianClassModel> tuned;
    for (std::size_t i = 0; i < options.blends.size(); ++i) {
        const double b = options.blends[i];
        tuned.push_back(fine_tune(sim_model, images_of(tune_set), labels_of(tune_set), b));
        add("sim_full+finetune@" + format_double(b), tuned.back(), b);
        if (r.rows.back().values[1] > best_val) {
            best_val = r.rows.back().values[1];
            best = i;
        }
    }
    add("sim_full+finetune", tuned[best], options.blends[best]);
    r.runtime_seconds = seconds_since(t0);
    return r;
}

void save_report_plot(const ExperimentReport& report, const std::vector<std::string>& metrics,
                      const std::filesystem::path& path, const std::string& y_label) {
    bool numeric = true;
    for (const auto& row : report.rows) {
        try {
            parse_double(row.axis_value);
        } catch (const std::exception&) {
            numeric = false;
        }
    }
    std::vector<PlotSeries> series;
    for (const auto& m : metrics) {
        PlotSeries s{m, {}};
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            const double x = numeric ? parse_double(report.rows[i].axis_value) : static_cast<double>(i);
            s.points.emplace_back(x, report.value(report.rows[i].axis_value, m));
        }
        series.push_back(std::move(s));
    }
    std::string x_label = report.axis;
    if (!numeric) {
        x_label += " (";
        for (std::size_t i = 0; i < report.rows.size(); ++i) x_label += (i ? ", " : "") + std::to_string(i) + "=" + report.rows[i].axis_value;
        x_label += ")";
    }
    save_svg_plot(path, report.kind, x_label, y_label, series);
}

}  // namespace urbansim
