#include "pedyn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include "CLI11.hpp"

#include "pedyn/csv.hpp"
#include "pedyn/hexfloat.hpp"
#include "pedyn/kernels.hpp"
#include "pedyn/svg_plot.hpp"

namespace fs = std::filesystem;

namespace pedyn {

std::uint64_t effective_seed(const ExperimentConfig& cfg, const std::uint64_t* cli_seed) {
    if (cli_seed) return *cli_seed;
    if (const char* env = std::getenv("PEDYN_SEED")) {
        std::uint64_t v = 0;
        const char* end = env + std::string(env).size();
        auto res = std::from_chars(env, end, v);
        if (res.ec != std::errc() || res.ptr != end) {
            throw std::runtime_error("PEDYN_SEED is not a valid unsigned integer: \"" +
                                     std::string(env) + "\"");
        }
        return v;
    }
    return cfg.seed;
}

nlohmann::json encoder_document(const ExperimentConfig& cfg, const Scene& scene,
                                const AutoencoderModel* model, const PretrainStats* stats) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["kind"] = cfg.encoder_kind;
    doc["sensory_dim"] = cfg.sensory_dim;
    doc["image_width"] = cfg.image_width;
    doc["image_height"] = cfg.image_height;
    doc["scene"] = scene.to_json();
    if (model) doc["model"] = model->to_json();
    if (stats) doc["stats"] = stats->to_json();
    return doc;
}

std::unique_ptr<SensoryEncoder> load_encoder_document(const nlohmann::json& doc,
                                                      const ExperimentConfig& cfg,
                                                      const Scene& expected_scene) {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind != cfg.encoder_kind) {
        throw std::runtime_error("encoder file is of kind \"" + kind +
                                 "\" but the config wants \"" + cfg.encoder_kind + "\"");
    }
    if (doc.at("sensory_dim").get<std::size_t>() != cfg.sensory_dim ||
        doc.at("image_width").get<std::size_t>() != cfg.image_width ||
        doc.at("image_height").get<std::size_t>() != cfg.image_height) {
        throw std::runtime_error("encoder file dimensions do not match the config");
    }
    if (!(Scene::from_json(doc.at("scene")) == expected_scene)) {
        throw std::runtime_error(
            "encoder file was built for a different scene; pretrain and run "
            "must use the same config seed");
    }
    if (kind == "identity") {
        return std::make_unique<IdentityFeaturesEncoder>(cfg.sensory_dim, cfg.image_width,
                                                         cfg.image_height);
    }
    return std::make_unique<AutoencoderModel>(AutoencoderModel::from_json(doc.at("model")));
}

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    nlohmann::json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string exp_run_csv_name(std::size_t exp_id, std::size_t run_idx) {
    return "doe/exp" + std::to_string(exp_id) + "_run" + std::to_string(run_idx) + ".csv";
}

nlohmann::json test_set_document(const TestSet& test) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["samples"] = nlohmann::json::array();
    for (const VisuoMotorSample& s : test.samples) {
        nlohmann::json sj;
        sj["motor"] = {to_hex(s.motor.x), to_hex(s.motor.y)};
        nlohmann::json sen = nlohmann::json::array();
        for (double v : s.sensory) sen.push_back(to_hex(v));
        sj["sensory"] = std::move(sen);
        doc["samples"].push_back(std::move(sj));
    }
    return doc;
}

/// Builds or loads the shared setup depending on encoder kind and the
/// presence of an encoder file.
SharedSetup setup_for_run(const ExperimentConfig& cfg, const fs::path& out_dir) {
    const fs::path enc_path = out_dir / "encoder.json";
    if (fs::exists(enc_path)) {
        const Scene expected =
            Scene::generate(cfg.blob_count, derive_seed(cfg.seed, "scene"));
        auto encoder = load_encoder_document(read_json_file(enc_path.string()), cfg, expected);
        return build_shared_setup(cfg, std::move(encoder));
    }
    if (cfg.encoder_kind == "identity") {
        return build_shared_setup(cfg);
    }
    throw std::runtime_error("no pretrained encoder at " + enc_path.string() +
                             "; run the pretrain subcommand first");
}

// ---- DoE reporting (shared by doe and replot) ----

struct DoeLayout {
    // Indexed [exp_id][run_idx]; error empty means the run succeeded.
    std::vector<std::vector<std::string>> csv_rel;
    std::vector<std::vector<std::uint64_t>> seeds;
    std::vector<std::vector<std::string>> errors;
    std::size_t runs_per_exp = 0;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return std::nan("");
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return std::nan("");
    double total = 0.0;
    for (double x : v) total += x;
    return total / static_cast<double>(v.size());
}

struct MseCurve {
    std::vector<double> iters;
    std::vector<double> fwd;
    std::vector<double> inv;
};

MseCurve mse_curve(const RunLog& log) {
    MseCurve c;
    for (const IterationRecord& r : log.records) {
        if (r.has_mse) {
            c.iters.push_back(static_cast<double>(r.iter));
            c.fwd.push_back(r.fwd_mse);
            c.inv.push_back(r.inv_mse);
        }
    }
    return c;
}

/// Reads every successful run's CSV, aggregates across runs, and writes
/// summary.json plus the five SVG charts. Everything is derived from the
/// CSV files alone, so re-running over the same files reproduces the same
/// bytes. Returns false when any artifact is missing, failed or
/// non-finite.
bool write_doe_reports(const fs::path& out_dir, const ExperimentConfig& base,
                       const DoeLayout& layout) {
    bool all_ok = true;
    std::vector<std::vector<RunLog>> logs(kExperimentRows);
    for (std::size_t e = 0; e < kExperimentRows; ++e) {
        logs[e].resize(layout.runs_per_exp);
        for (std::size_t r = 0; r < layout.runs_per_exp; ++r) {
            if (!layout.errors[e][r].empty()) {
                all_ok = false;
                continue;
            }
            logs[e][r] = read_run_csv_file((out_dir / layout.csv_rel[e][r]).string());
        }
    }

    nlohmann::json summary;
    summary["schema_version"] = 1;
    summary["tool_version"] = kToolVersion;
    summary["experiments"] = nlohmann::json::array();

    std::vector<std::pair<double, std::size_t>> by_median;
    std::vector<std::pair<double, std::size_t>> by_mean;
    std::vector<MseCurve> mean_curves(kExperimentRows);

    for (std::size_t e = 0; e < kExperimentRows; ++e) {
        ExperimentConfig row_cfg = base;
        apply_experiment_row(row_cfg, e);
        nlohmann::json ej;
        ej["exp_id"] = e;
        ej["fixed_goal_som"] = row_cfg.fixed_goal_som;
        ej["fixed_expl_noise"] = row_cfg.fixed_expl_noise;
        ej["greedy_move_prob"] = row_cfg.greedy_move_prob;
        ej["runs"] = nlohmann::json::array();

        std::vector<double> finals_fwd;
        std::vector<double> finals_inv;
        std::vector<MseCurve> curves;
        for (std::size_t r = 0; r < layout.runs_per_exp; ++r) {
            nlohmann::json rj;
            rj["run_idx"] = r;
            rj["seed"] = layout.seeds[e][r];
            rj["csv"] = layout.csv_rel[e][r];
            const bool ok = layout.errors[e][r].empty();
            rj["ok"] = ok;
            if (!ok) {
                rj["error"] = layout.errors[e][r];
            } else {
                const MseCurve c = mse_curve(logs[e][r]);
                if (!c.fwd.empty()) {
                    rj["final_fwd_mse"] = c.fwd.back();
                    rj["final_inv_mse"] = c.inv.back();
                    finals_fwd.push_back(c.fwd.back());
                    finals_inv.push_back(c.inv.back());
                    if (!std::isfinite(c.fwd.back()) || !std::isfinite(c.inv.back())) {
                        all_ok = false;
                    }
                }
                curves.push_back(std::move(c));
            }
            ej["runs"].push_back(std::move(rj));
        }

        MseCurve& mc = mean_curves[e];
        if (!curves.empty()) {
            const std::size_t points = curves.front().iters.size();
            for (std::size_t i = 0; i < points; ++i) {
                double f = 0.0;
                double v = 0.0;
                for (const MseCurve& c : curves) {
                    f += c.fwd[i];
                    v += c.inv[i];
                }
                mc.iters.push_back(curves.front().iters[i]);
                mc.fwd.push_back(f / static_cast<double>(curves.size()));
                mc.inv.push_back(v / static_cast<double>(curves.size()));
            }
        }

        const double med_fwd = median(finals_fwd);
        const double mean_fwd = mean(finals_fwd);
        ej["median_final_fwd_mse"] = med_fwd;
        ej["mean_final_fwd_mse"] = mean_fwd;
        ej["median_final_inv_mse"] = median(finals_inv);
        ej["mean_final_inv_mse"] = mean(finals_inv);
        ej["mean_fwd_curve"] = {{"iters", mc.iters}, {"mse", mc.fwd}};
        ej["mean_inv_curve"] = {{"iters", mc.iters}, {"mse", mc.inv}};
        summary["experiments"].push_back(std::move(ej));
        if (std::isfinite(med_fwd)) by_median.push_back({med_fwd, e});
        if (std::isfinite(mean_fwd)) by_mean.push_back({mean_fwd, e});
    }

    std::sort(by_median.begin(), by_median.end());
    std::sort(by_mean.begin(), by_mean.end());
    nlohmann::json rank_median = nlohmann::json::array();
    for (const auto& [v, e] : by_median) rank_median.push_back(e);
    nlohmann::json rank_mean = nlohmann::json::array();
    for (const auto& [v, e] : by_mean) rank_mean.push_back(e);
    summary["ranking_by_median_final_fwd_mse"] = std::move(rank_median);
    summary["ranking_by_mean_final_fwd_mse"] = std::move(rank_mean);
    write_json_file((out_dir / "summary.json").string(), summary);

    // Mean MSE curves, one series per design row.
    auto curve_panel = [&](bool forward) {
        Panel panel;
        panel.title = forward ? "Forward model MSE, mean over runs"
                              : "Inverse model MSE, mean over runs";
        panel.y_label = "MSE";
        for (std::size_t e = 0; e < kExperimentRows; ++e) {
            if (mean_curves[e].iters.empty()) continue;
            Series s;
            s.label = "exp " + std::to_string(e);
            s.xs = mean_curves[e].iters;
            s.ys = forward ? mean_curves[e].fwd : mean_curves[e].inv;
            panel.series.push_back(std::move(s));
        }
        return panel;
    };
    write_text_file((out_dir / "fwd_mse.svg").string(),
                    render_chart("Forward model test error", "iteration",
                                 {curve_panel(true)}, 960, 420));
    write_text_file((out_dir / "inv_mse.svg").string(),
                    render_chart("Inverse model test error", "iteration",
                                 {curve_panel(false)}, 960, 420));

    // Detailed dynamics of run 0 for the two rows the write-up singles
    // out: the all-fixed row 3 and the all-adaptive row 4.
    auto dynamics_chart = [&](std::size_t exp_id) {
        const RunLog& log = logs[exp_id][0];
        Series amplitude, sigma, slope, capacity;
        for (const IterationRecord& r : log.records) {
            const double it = static_cast<double>(r.iter);
            amplitude.xs.push_back(it);
            amplitude.ys.push_back(r.move_amplitude);
            sigma.xs.push_back(it);
            sigma.ys.push_back(r.sigma);
            capacity.xs.push_back(it);
            capacity.ys.push_back(static_cast<double>(r.buf_capacity));
            if (r.has_mse && r.mse_slope.defined) {
                slope.xs.push_back(it);
                slope.ys.push_back(r.mse_slope.slope);
            }
        }
        std::vector<Panel> panels(4);
        panels[0] = {"Movement amplitude", "amplitude", {std::move(amplitude)}};
        panels[1] = {"Exploration noise sigma", "sigma", {std::move(sigma)}};
        panels[2] = {"MSE trend slope", "slope", {std::move(slope)}};
        panels[3] = {"Goal error buffer capacity", "capacity", {std::move(capacity)}};
        return render_chart("Run dynamics, experiment " + std::to_string(exp_id) + ", run 0",
                            "iteration", panels, 960, 150);
    };
    if (layout.errors[3][0].empty()) {
        write_text_file((out_dir / "dynamics_exp3.svg").string(), dynamics_chart(3));
    } else {
        all_ok = false;
    }
    if (layout.errors[4][0].empty()) {
        write_text_file((out_dir / "dynamics_exp4.svg").string(), dynamics_chart(4));
    } else {
        all_ok = false;
    }

    // Goal selection and per-goal error trends for run 0 of row 4.
    if (layout.errors[4][0].empty()) {
        const RunLog& log = logs[4][0];
        int max_goal = 0;
        for (const IterationRecord& r : log.records) max_goal = std::max(max_goal, r.goal_id);
        const std::size_t goals = static_cast<std::size_t>(max_goal) + 1;

        std::vector<Panel> panels;
        Series selected;
        for (const IterationRecord& r : log.records) {
            selected.xs.push_back(static_cast<double>(r.iter));
            selected.ys.push_back(static_cast<double>(r.goal_id));
        }
        panels.push_back({"Selected goal", "goal", {std::move(selected)}});
        for (std::size_t g = 0; g < goals; ++g) {
            Series s;
            for (const IterationRecord& r : log.records) {
                s.xs.push_back(static_cast<double>(r.iter));
                const bool active =
                    r.goal_id == static_cast<int>(g) && r.goal_slope.defined;
                s.ys.push_back(active ? r.goal_slope.slope
                                      : std::numeric_limits<double>::quiet_NaN());
            }
            panels.push_back({"Goal " + std::to_string(g) + " error trend", "slope",
                              {std::move(s)}});
        }
        write_text_file((out_dir / "goals_exp4.svg").string(),
                        render_chart("Goal error dynamics, experiment 4, run 0", "iteration",
                                     panels, 960, 90));
    }

    return all_ok;
}

// ---- Subcommands ----

int cmd_pretrain(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
    cfg.seed = effective_seed(cfg, nullptr);
    const fs::path out_dir(out);
    fs::create_directories(out_dir);

    const Scene scene = Scene::generate(cfg.blob_count, derive_seed(cfg.seed, "scene"));
    nlohmann::json doc;
    nlohmann::json report;
    report["schema_version"] = 1;
    report["tool_version"] = kToolVersion;
    report["encoder_kind"] = cfg.encoder_kind;

    if (cfg.encoder_kind == "identity") {
        doc = encoder_document(cfg, scene, nullptr, nullptr);
        report["trained"] = false;
    } else {
        const WorldParams wp{cfg.image_width, cfg.image_height, cfg.window, cfg.traj_step};
        const std::vector<Image> corpus = render_grid_corpus(scene, wp, cfg.corpus_grid);
        EncoderTraining training;
        training.latent_dim = cfg.sensory_dim;
        training.hidden = cfg.encoder_hidden;
        training.epochs = cfg.encoder_epochs;
        training.batch_size = cfg.encoder_batch;
        training.holdout_fraction = cfg.encoder_holdout;
        training.adadelta = cfg.adadelta();
        auto [model, stats] =
            pretrain_autoencoder(corpus, training, derive_seed(cfg.seed, "encoder"));
        doc = encoder_document(cfg, scene, &model, &stats);
        report["trained"] = stats.trained;
        report["stats"] = stats.to_json();
        std::cout << "pretrain: corpus " << stats.corpus_size << ", holdout mse "
                  << stats.holdout_mse << ", baseline mse " << stats.baseline_mse
                  << (stats.trained ? "" : " (untrained)") << "\n";
    }
    write_json_file((out_dir / "encoder.json").string(), doc);
    write_json_file((out_dir / "pretrain_report.json").string(), report);
    std::cout << "pretrain: wrote " << (out_dir / "encoder.json").string() << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out,
            const std::optional<std::uint64_t>& seed_flag, const std::optional<int>& exp_flag,
            std::size_t run_index) {
    ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
    const std::uint64_t seed_value = seed_flag ? *seed_flag : 0;
    cfg.seed = effective_seed(cfg, seed_flag ? &seed_value : nullptr);
    std::string csv_name = "run.csv";
    std::uint64_t run_seed;
    if (exp_flag) {
        apply_experiment_row(cfg, static_cast<std::size_t>(*exp_flag));
        csv_name = "run_exp" + std::to_string(*exp_flag) + ".csv";
        run_seed = run_seed_for(cfg.seed, static_cast<std::size_t>(*exp_flag), run_index);
    } else {
        run_seed = derive_seed(cfg.seed, "run-" + std::to_string(run_index));
    }

    const fs::path out_dir(out);
    fs::create_directories(out_dir);
    const SharedSetup shared = setup_for_run(cfg, out_dir);

    Engine engine(cfg, shared, run_seed);
    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    std::string error;
    try {
        engine.run_all();
    } catch (const std::exception& e) {
        error = e.what();
        exit_code = 1;
        std::cerr << "run aborted: " << error << "\n";
    }
    const auto t1 = std::chrono::steady_clock::now();

    // The log written so far is preserved even when the run aborted.
    write_run_csv_file((out_dir / csv_name).string(), engine.log());
    write_json_file((out_dir / "checkpoint.json").string(), engine.checkpoint());

    nlohmann::json manifest;
    manifest["schema_version"] = 1;
    manifest["tool_version"] = kToolVersion;
    manifest["command"] = "run";
    manifest["config"] = cfg.to_json();
    manifest["run_seed"] = run_seed;
    manifest["run_index"] = run_index;
    if (exp_flag) manifest["exp_id"] = *exp_flag;
    manifest["artifacts"] = {{"csv", csv_name}, {"checkpoint", "checkpoint.json"}};
    manifest["ok"] = error.empty();
    if (!error.empty()) manifest["error"] = error;
    manifest["discarded_samples"] = engine.log().discarded_samples;
    manifest["kernel_backend"] = kernels::backend_name();
    manifest["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    write_json_file((out_dir / "run_manifest.json").string(), manifest);

    std::cout << "run: " << engine.log().records.size() << " iterations -> "
              << (out_dir / csv_name).string() << "\n";
    return exit_code;
}

int cmd_doe(const std::string& config_path, const std::string& out, std::size_t jobs) {
    ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
    cfg.seed = effective_seed(cfg, nullptr);
    const fs::path out_dir(out);
    fs::create_directories(out_dir / "doe");

    const SharedSetup shared = setup_for_run(cfg, out_dir);
    write_json_file((out_dir / "test_set.json").string(), test_set_document(shared.test_set));
    const auto t0 = std::chrono::steady_clock::now();
    const DoeResult doe = run_doe(cfg, shared, jobs);
    const auto t1 = std::chrono::steady_clock::now();

    DoeLayout layout;
    layout.runs_per_exp = cfg.runs;
    layout.csv_rel.assign(kExperimentRows, std::vector<std::string>(cfg.runs));
    layout.seeds.assign(kExperimentRows, std::vector<std::uint64_t>(cfg.runs, 0));
    layout.errors.assign(kExperimentRows, std::vector<std::string>(cfg.runs));
    bool all_ok = true;
    for (const DoeRun& run : doe.runs) {
        const std::string rel = exp_run_csv_name(run.exp_id, run.run_idx);
        layout.csv_rel[run.exp_id][run.run_idx] = rel;
        layout.seeds[run.exp_id][run.run_idx] = run.run_seed;
        if (run.ok) {
            write_run_csv_file((out_dir / rel).string(), run.log);
        } else {
            layout.errors[run.exp_id][run.run_idx] = run.error;
            std::cerr << "doe: exp " << run.exp_id << " run " << run.run_idx
                      << " failed: " << run.error << "\n";
            all_ok = false;
        }
    }

    if (!write_doe_reports(out_dir, cfg, layout)) {
        all_ok = false;
    }

    nlohmann::json manifest;
    manifest["schema_version"] = 1;
    manifest["tool_version"] = kToolVersion;
    manifest["command"] = "doe";
    manifest["config"] = cfg.to_json();
    manifest["runs"] = nlohmann::json::array();
    for (const DoeRun& run : doe.runs) {
        nlohmann::json rj;
        rj["exp_id"] = run.exp_id;
        rj["run_idx"] = run.run_idx;
        rj["seed"] = run.run_seed;
        rj["csv"] = layout.csv_rel[run.exp_id][run.run_idx];
        rj["ok"] = run.ok;
        if (!run.ok) rj["error"] = run.error;
        rj["discarded_samples"] = run.log.discarded_samples;
        manifest["runs"].push_back(std::move(rj));
    }
    manifest["artifacts"] = {
        {"summary", "summary.json"},
        {"test_set", "test_set.json"},
        {"plots", {"fwd_mse.svg", "inv_mse.svg", "dynamics_exp3.svg", "dynamics_exp4.svg",
                   "goals_exp4.svg"}},
    };
    if (fs::exists(out_dir / "encoder.json")) {
        manifest["artifacts"]["encoder"] = "encoder.json";
    }
    manifest["kernel_backend"] = kernels::backend_name();
    manifest["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    write_json_file((out_dir / "manifest.json").string(), manifest);

    std::cout << "doe: " << doe.runs.size() << " runs -> " << (out_dir / "doe").string()
              << (all_ok ? "" : " (with failures)") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_replot(const std::string& out) {
    const fs::path out_dir(out);
    const nlohmann::json manifest = read_json_file((out_dir / "manifest.json").string());
    const ExperimentConfig cfg = ExperimentConfig::from_json(manifest.at("config"));

    DoeLayout layout;
    layout.runs_per_exp = cfg.runs;
    layout.csv_rel.assign(kExperimentRows, std::vector<std::string>(cfg.runs));
    layout.seeds.assign(kExperimentRows, std::vector<std::uint64_t>(cfg.runs, 0));
    layout.errors.assign(kExperimentRows, std::vector<std::string>(cfg.runs));
    for (const auto& rj : manifest.at("runs")) {
        const std::size_t e = rj.at("exp_id").get<std::size_t>();
        const std::size_t r = rj.at("run_idx").get<std::size_t>();
        layout.csv_rel[e][r] = rj.at("csv").get<std::string>();
        layout.seeds[e][r] = rj.at("seed").get<std::uint64_t>();
        if (!rj.at("ok").get<bool>()) {
            layout.errors[e][r] = rj.value("error", "failed");
        }
    }
    const bool ok = write_doe_reports(out_dir, cfg, layout);
    std::cout << "replot: regenerated summary and plots in " << out_dir.string() << "\n";
    return ok ? 0 : 1;
}

int validate_csv(const fs::path& path, std::size_t mse_log_period) {
    try {
        const RunLog log = read_run_csv_file(path.string());
        for (std::size_t i = 0; i < log.records.size(); ++i) {
            const IterationRecord& r = log.records[i];
            if (r.iter != i) {
                throw std::runtime_error("iterations are not contiguous from 0 at row " +
                                         std::to_string(i));
            }
            const bool expect_mse = (r.iter % mse_log_period == 0);
            if (r.has_mse != expect_mse) {
                throw std::runtime_error("MSE cadence violated at iteration " +
                                         std::to_string(r.iter));
            }
        }
        std::cout << "ok: " << path.string() << " (" << log.records.size() << " rows)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "FAIL: " << path.string() << ": " << e.what() << "\n";
        return 1;
    }
}

int cmd_validate(const std::string& out, const std::vector<std::string>& files,
                 std::size_t period_flag) {
    int failures = 0;
    if (!files.empty()) {
        for (const std::string& f : files) {
            failures += validate_csv(f, period_flag);
        }
        return failures == 0 ? 0 : 1;
    }

    const fs::path out_dir(out);
    const fs::path manifest_path = out_dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
        std::cerr << "validate: no manifest.json in " << out_dir.string()
                  << " and no files given\n";
        return 2;
    }
    const nlohmann::json manifest = read_json_file(manifest_path.string());
    const ExperimentConfig cfg = ExperimentConfig::from_json(manifest.at("config"));
    for (const auto& rj : manifest.at("runs")) {
        if (!rj.at("ok").get<bool>()) {
            std::cerr << "FAIL: run exp " << rj.at("exp_id") << " run " << rj.at("run_idx")
                      << " recorded as failed\n";
            ++failures;
            continue;
        }
        failures += validate_csv(out_dir / rj.at("csv").get<std::string>(),
                                 cfg.mse_log_period);
    }
    for (const char* name : {"summary.json"}) {
        const fs::path p = out_dir / name;
        try {
            read_json_file(p.string());
            std::cout << "ok: " << p.string() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "FAIL: " << p.string() << ": " << e.what() << "\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Goal-directed exploration driven by prediction-error dynamics"};
    app.set_version_flag("--version", std::string("pedyn ") + kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out = "out";
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> exp_flag;
    std::size_t run_index = 0;
    std::size_t jobs = 1;
    std::vector<std::string> files;
    std::size_t period_flag = 40;

    CLI::App* pre = app.add_subcommand("pretrain", "Render the corpus and train the encoder");
    pre->add_option("--config", config_path, "Config JSON path")
        ->required()
        ->check(CLI::ExistingFile);
    pre->add_option("--out", out, "Output directory");

    CLI::App* run = app.add_subcommand("run", "Run one experiment");
    run->add_option("--config", config_path, "Config JSON path")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output directory");
    run->add_option("--seed", seed_flag, "Override the config seed");
    run->add_option("--exp", exp_flag, "Apply design row 0..7")->check(CLI::Range(0, 7));
    run->add_option("--run-index", run_index, "Run index within the design row");

    CLI::App* doe = app.add_subcommand("doe", "Run the full 8-row design");
    doe->add_option("--config", config_path, "Config JSON path")
        ->required()
        ->check(CLI::ExistingFile);
    doe->add_option("--out", out, "Output directory");
    doe->add_option("--jobs", jobs, "Parallel runs");

    CLI::App* replot = app.add_subcommand("replot", "Regenerate summary and plots from CSVs");
    replot->add_option("--out", out, "Output directory with manifest.json");

    CLI::App* validate = app.add_subcommand("validate", "Schema-check produced artifacts");
    validate->add_option("--out", out, "Output directory with manifest.json");
    validate->add_option("files", files, "Run CSV files to check individually");
    validate->add_option("--period", period_flag, "Expected MSE cadence for bare files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (pre->parsed()) return cmd_pretrain(config_path, out);
        if (run->parsed()) return cmd_run(config_path, out, seed_flag, exp_flag, run_index);
        if (doe->parsed()) return cmd_doe(config_path, out, jobs);
        if (replot->parsed()) return cmd_replot(out);
        if (validate->parsed()) return cmd_validate(out, files, period_flag);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace pedyn
