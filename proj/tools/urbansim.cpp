// Command-line front end: dataset generation and the three experiment recipes.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "urbansim/core/text.hpp"
#include "urbansim/eval/report.hpp"
#include "urbansim/experiments/experiments.hpp"

namespace fs = std::filesystem;
using namespace urbansim;

namespace {

constexpr std::uint64_t kTestSeedOffset = 10000;
constexpr std::uint64_t kTargetTrainSeedOffset = 20000;
constexpr std::uint64_t kTargetTestSeedOffset = 30000;

struct Common {
    std::string config_path;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string fidelity;
    bool reuse = false;

    void add(CLI::App* app) {
        app->add_option("-c,--config", config_path, "INI configuration (defaults are used when omitted)");
        app->add_option("-o,--out", out, "Output directory");
        app->add_option("-s,--seed", seed, "Base scene seed");
        app->add_option("-j,--threads", threads, "Render threads (0 = all cores)");
        app->add_option("-f,--fidelity", fidelity, "Comma-separated fidelity list, e.g. lambertian,mcpt40");
        app->add_flag("--reuse", reuse, "Reuse an existing dataset whose snapshot and digests match");
    }

    ExperimentConfig config() const {
        ExperimentConfig c = config_path.empty() ? ExperimentConfig::defaults() : ExperimentConfig::load(config_path);
        if (seed) c.base_seed = *seed;
        if (threads) c.threads = *threads;
        if (!fidelity.empty()) {
            c.fidelities.clear();
            for (const auto& f : split(fidelity, ',')) c.fidelities.push_back(parse_fidelity(std::string(trim(f))));
        }
        c.validate();
        return c;
    }
};

std::vector<FidelityTier> tiers(const std::string& list) {
    std::vector<FidelityTier> out;
    for (const auto& f : split(list, ',')) out.push_back(parse_fidelity(std::string(trim(f))));
    return out;
}

/// Generates (or, with reuse, loads) a dataset; throws when frames are missing.
DatasetManifest dataset(const ExperimentConfig& cfg, const fs::path& dir, const std::string& id, bool reuse) {
    if (reuse && fs::exists(dir / kManifestFile)) {
        try {
            const DatasetManifest m = load_manifest(dir);
            std::ifstream is(dir / m.config_snapshot.path);
            std::stringstream ss;
            ss << is.rdbuf();
            if (ss.str() == cfg.to_ini().to_string() && m.dataset_id == id && verify_manifest(m).empty()) {
                std::cerr << "reusing " << dir << '\n';
                return m;
            }
        } catch (const std::exception&) {
        }
    }
    std::cerr << "generating " << id << " (" << cfg.n_scenes << " scenes x " << cfg.fidelities.size() << " fidelities) in "
              << dir << '\n';
    DatasetManifest m = generate_dataset(cfg, dir, id);
    if (!m.complete()) throw std::runtime_error("dataset " + id + " is incomplete; see " + (dir / kManifestFile).string());
    return m;
}

ExperimentConfig with(ExperimentConfig c, int n_scenes, std::uint64_t base_seed, std::vector<FidelityTier> fidelities) {
    c.n_scenes = n_scenes;
    c.base_seed = base_seed;
    c.fidelities = std::move(fidelities);
    return c;
}

void print_report(const ExperimentReport& r, const fs::path& csv) {
    r.write_csv(std::cout);
    r.save_csv(csv);
    std::cerr << "wrote " << csv << '\n';
}

std::vector<int> parse_widths(const std::string& s) {
    std::vector<int> out;
    for (const auto& w : split(s, ',')) out.push_back(static_cast<int>(parse_int(trim(w))));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"urbansim: synthetic street scenes, multi-fidelity rendering and bias evaluation"};
    app.require_subcommand(1);

    Common gen_opts;
    int gen_scenes = -1;
    std::string gen_domain = "sim", gen_id;
    auto* gen = app.add_subcommand("generate", "Sample scenes and render every fidelity");
    gen_opts.add(gen);
    gen->add_option("-n,--scenes", gen_scenes, "Number of scenes");
    gen->add_option("--domain", gen_domain, "sim or target")->check(CLI::IsMember({"sim", "target"}));
    gen->add_option("--id", gen_id, "Dataset id (default: the domain name)");

    Common sweep_opts;
    std::string sweep_test_fid = "lambertian", sweep_test_domain = "sim";
    int sweep_test_scenes = 3;
    auto* sweep = app.add_subcommand("sweep", "Train one probe per fidelity and evaluate on a shared test set");
    sweep_opts.add(sweep);
    sweep->add_option("--test-fidelity", sweep_test_fid, "Fidelity of the test set");
    sweep->add_option("--test-domain", sweep_test_domain, "sim or target")->check(CLI::IsMember({"sim", "target"}));
    sweep->add_option("--test-scenes", sweep_test_scenes, "Number of test scenes");

    Common tri_opts;
    std::string tri_widths = "1,2,3,5,10,20,40";
    std::string tri_train_fid = "lambertian", tri_test_fid = "mcpt10";
    int tri_test_scenes = 3;
    auto* tri = app.add_subcommand("trimap", "IoU inside boundary bands of increasing width");
    tri_opts.add(tri);
    tri->add_option("--widths", tri_widths, "Ascending band widths in pixels");
    tri->add_option("--train-fidelity", tri_train_fid, "Fidelity of the sim training set");
    tri->add_option("--test-fidelity", tri_test_fid, "Fidelity of the target test set");
    tri->add_option("--test-scenes", tri_test_scenes, "Number of target test scenes");

    Common ad_opts;
    AdaptationOptions ad;
    std::string ad_blends = "0,0.1,0.25,0.5,0.75,1";
    std::string ad_sim_fid = "lambertian", ad_target_fid = "mcpt10";
    int ad_target_train = 4, ad_target_test = 3;
    auto* adapt = app.add_subcommand("adapt", "Sim-only, target-only and fine-tuned probes on the shifted domain");
    ad_opts.add(adapt);
    adapt->add_option("--fraction", ad.target_fraction, "Share of target-train scenes used for fine-tuning")
        ->check(CLI::Range(1e-9, 1.0));
    adapt->add_option("--sim-small", ad.sim_small_fraction, "Share of sim scenes in the sim_small row")->check(CLI::Range(1e-9, 1.0));
    adapt->add_option("--blends", ad_blends, "Comma-separated blend grid in [0, 1]");
    adapt->add_option("--sim-fidelity", ad_sim_fid, "Fidelity of the sim set");
    adapt->add_option("--target-fidelity", ad_target_fid, "Fidelity of the target sets");
    adapt->add_option("--target-train-scenes", ad_target_train, "Number of target training scenes");
    adapt->add_option("--target-test-scenes", ad_target_test, "Number of target test scenes");

    std::string ev_model, ev_manifest, ev_fid, ev_out;
    auto* ev = app.add_subcommand("eval", "Evaluate a saved probe model on a dataset");
    ev->add_option("-m,--model", ev_model, "Probe model file")->required();
    ev->add_option("--manifest", ev_manifest, "Dataset manifest or directory")->required();
    ev->add_option("-f,--fidelity", ev_fid, "Fidelity to evaluate")->required();
    ev->add_option("-o,--out", ev_out, "CSV output path");

    std::string ver_manifest;
    auto* ver = app.add_subcommand("verify", "Check a dataset's files against its manifest digests");
    ver->add_option("manifest", ver_manifest, "Dataset manifest or directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            ExperimentConfig cfg = gen_opts.config();
            if (gen_domain == "target") cfg = cfg.target_domain();
            if (gen_opts.threads) cfg.threads = *gen_opts.threads;
            if (gen_scenes > 0) cfg.n_scenes = gen_scenes;
            const DatasetManifest m = dataset(cfg, gen_opts.out, gen_id.empty() ? gen_domain : gen_id, gen_opts.reuse);
            std::cout << "frames=" << m.frames.size() << " complete=" << (m.complete() ? "true" : "false") << '\n';
            return 0;
        }
        if (*sweep) {
            const ExperimentConfig cfg = sweep_opts.config();
            const fs::path out = sweep_opts.out;
            fs::create_directories(out / "models");
            const DatasetManifest train = dataset(cfg, out / "train", "sim_train", sweep_opts.reuse);
            ExperimentConfig test_cfg = sweep_test_domain == "target" ? cfg.target_domain() : cfg;
            test_cfg.threads = cfg.threads;
            test_cfg = with(test_cfg, sweep_test_scenes, cfg.base_seed + kTestSeedOffset, tiers(sweep_test_fid));
            const DatasetManifest test = dataset(test_cfg, out / "test", sweep_test_domain + "_test", sweep_opts.reuse);
            const SweepResult res = run_fidelity_sweep(train, load_frames(test, sweep_test_fid));
            for (const auto& [name, model] : res.models) model.save(out / "models" / (name + ".txt"));
            print_report(res.report, out / "sweep.csv");
            save_report_plot(res.report, {"mean_iou"}, out / "sweep_iou.svg", "mean IoU");
            save_report_plot(res.report, {"histogram_tv"}, out / "sweep_histogram_tv.svg", "histogram TV distance");
            return 0;
        }
        if (*tri) {
            const ExperimentConfig cfg = tri_opts.config();
            const fs::path out = tri_opts.out;
            ExperimentConfig target = cfg.target_domain();
            target.threads = cfg.threads;
            const DatasetManifest sim =
                dataset(with(cfg, cfg.n_scenes, cfg.base_seed, tiers(tri_train_fid)), out / "sim", "sim_train", tri_opts.reuse);
            const DatasetManifest target_train =
                dataset(with(target, cfg.n_scenes, cfg.base_seed + kTargetTrainSeedOffset, tiers(tri_test_fid)),
                        out / "target_train", "target_train", tri_opts.reuse);
            const DatasetManifest target_test =
                dataset(with(target, tri_test_scenes, cfg.base_seed + kTargetTestSeedOffset, tiers(tri_test_fid)),
                        out / "target_test", "target_test", tri_opts.reuse);
            const auto test = load_frames(target_test, tri_test_fid);
            std::vector<int> widths = parse_widths(tri_widths);
            const int diagonal = static_cast<int>(std::ceil(std::hypot(test[0].labels.width(), test[0].labels.height())));
            if (widths.empty() || widths.back() < diagonal) widths.push_back(diagonal);
            const std::vector<NamedModel> models{{"sim", train(load_frames(sim, tri_train_fid))},
                                                 {"target", train(load_frames(target_train, tri_test_fid))}};
            const ExperimentReport r = run_trimap_experiment(models, test, widths);
            print_report(r, out / "trimap.csv");
            save_report_plot(r, r.metrics, out / "trimap.svg", "mean IoU in band");
            return 0;
        }
        if (*adapt) {
            const ExperimentConfig cfg = ad_opts.config();
            const fs::path out = ad_opts.out;
            ad.blends.clear();
            for (const auto& b : split(ad_blends, ',')) ad.blends.push_back(parse_double(trim(b)));
            ExperimentConfig target = cfg.target_domain();
            target.threads = cfg.threads;
            const DatasetManifest sim =
                dataset(with(cfg, cfg.n_scenes, cfg.base_seed, tiers(ad_sim_fid)), out / "sim", "sim_train", ad_opts.reuse);
            const DatasetManifest target_train =
                dataset(with(target, ad_target_train, cfg.base_seed + kTargetTrainSeedOffset, tiers(ad_target_fid)),
                        out / "target_train", "target_train", ad_opts.reuse);
            const DatasetManifest target_test =
                dataset(with(target, ad_target_test, cfg.base_seed + kTargetTestSeedOffset, tiers(ad_target_fid)),
                        out / "target_test", "target_test", ad_opts.reuse);
            const ExperimentReport r = run_adaptation_experiment(load_frames(sim, ad_sim_fid), load_frames(target_train, ad_target_fid),
                                                                 load_frames(target_test, ad_target_fid), ad);
            print_report(r, out / "adaptation.csv");
            save_report_plot(r, {"mean_iou", "validation_iou"}, out / "adaptation.svg", "mean IoU");
            return 0;
        }
        if (*ev) {
            const GaussianClassModel model = GaussianClassModel::load(ev_model);
            const DatasetManifest m = load_manifest(ev_manifest);
            const IouResult res = iou(evaluate(model, load_frames(m, ev_fid)));
            std::ostringstream os;
            write_iou_header(os);
            write_iou_row(os, m.dataset_id + ":" + ev_fid, res);
            std::cout << os.str();
            if (!ev_out.empty()) {
                std::ofstream f(ev_out);
                f << os.str();
                if (!f) throw std::runtime_error(ev_out + ": write failed");
            }
            return 0;
        }
        if (*ver) {
            const auto problems = verify_manifest(load_manifest(ver_manifest));
            for (const auto& p : problems) std::cout << p << '\n';
            std::cout << (problems.empty() ? "ok" : "FAILED") << '\n';
            return problems.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
