#include "pedyn/engine.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pedyn {

SharedSetup build_shared_setup(const ExperimentConfig& cfg) {
    SharedSetup setup;
    setup.scene = Scene::generate(cfg.blob_count, derive_seed(cfg.seed, "scene"));
    const WorldParams wp{cfg.image_width, cfg.image_height, cfg.window, cfg.traj_step};
    if (cfg.encoder_kind == "identity") {
        setup.encoder = std::make_unique<IdentityFeaturesEncoder>(
            cfg.sensory_dim, cfg.image_width, cfg.image_height);
    } else {
        EncoderTraining training;
        training.latent_dim = cfg.sensory_dim;
        training.hidden = cfg.encoder_hidden;
        training.epochs = cfg.encoder_epochs;
        training.batch_size = cfg.encoder_batch;
        training.holdout_fraction = cfg.encoder_holdout;
        training.adadelta = cfg.adadelta();
        const std::vector<Image> corpus = render_grid_corpus(setup.scene, wp, cfg.corpus_grid);
        auto [model, stats] =
            pretrain_autoencoder(corpus, training, derive_seed(cfg.seed, "encoder"));
        setup.encoder = std::make_unique<AutoencoderModel>(std::move(model));
        setup.encoder_stats = stats;
    }
    setup.test_set = build_test_set(setup.scene, wp, *setup.encoder, cfg.test_set_size,
                                    derive_seed(cfg.seed, "testset"));
    return setup;
}

SharedSetup build_shared_setup(const ExperimentConfig& cfg,
                               std::unique_ptr<SensoryEncoder> encoder) {
    require(encoder != nullptr, "build_shared_setup: null encoder");
    require(encoder->dim() == cfg.sensory_dim,
            "build_shared_setup: encoder dimension does not match config");
    SharedSetup setup;
    setup.scene = Scene::generate(cfg.blob_count, derive_seed(cfg.seed, "scene"));
    setup.encoder = std::move(encoder);
    const WorldParams wp{cfg.image_width, cfg.image_height, cfg.window, cfg.traj_step};
    setup.test_set = build_test_set(setup.scene, wp, *setup.encoder, cfg.test_set_size,
                                    derive_seed(cfg.seed, "testset"));
    return setup;
}

namespace {

SomGrid make_som(const ExperimentConfig& cfg, const Scene& scene,
                 const SensoryEncoder& encoder, const WorldParams& wp,
                 std::uint64_t run_seed) {
    SomGrid som(cfg.som_rows, cfg.som_cols, cfg.sensory_dim, derive_seed(run_seed, "som-init"),
                cfg.som_lr0, cfg.som_sigma0, cfg.som_tau);
    if (cfg.fixed_goal_som) {
        RngStream rng(derive_seed(run_seed, "som-pretrain"));
        for (std::size_t i = 0; i < cfg.som_pretrain_samples; ++i) {
            const MotorCommand pos{rng.uniform(), rng.uniform()};
            som.train_step(encoder.encode(render(scene, pos, wp)));
        }
    }
    return som;
}

} // namespace

Engine::Engine(const ExperimentConfig& cfg, const SharedSetup& shared, std::uint64_t run_seed)
    : cfg_(cfg),
      scene_(shared.scene),
      encoder_(shared.encoder->clone()),
      test_set_(shared.test_set),
      world_params_{cfg.image_width, cfg.image_height, cfg.window, cfg.traj_step},
      robot_{{cfg.start_x, cfg.start_y}},
      som_(make_som(cfg, scene_, *encoder_, world_params_, run_seed)),
      inverse_(ModelLayout{cfg.sensory_dim, cfg.inverse_hidden, cfg.forward_hidden,
                           cfg.dropout_rate},
               derive_seed(run_seed, "inverse-init")),
      forward_(ModelLayout{cfg.sensory_dim, cfg.inverse_hidden, cfg.forward_hidden,
                           cfg.dropout_rate},
               derive_seed(run_seed, "forward-init")),
      memory_(cfg.memory_capacity, cfg.memory_insert_prob),
      goal_bufs_(som_.neuron_count(),
                 ErrorBuffer(cfg.goal_buf_min, cfg.goal_buf_min, cfg.goal_buf_max)),
      mse_buf_(cfg.mse_buffer_capacity, cfg.mse_buffer_capacity, cfg.mse_buffer_capacity),
      policy_rng_(derive_seed(run_seed, "policy")),
      train_rng_(derive_seed(run_seed, "train")),
      memory_rng_(derive_seed(run_seed, "memory")) {
    cfg_.validate();
    require(encoder_->dim() == cfg_.sensory_dim,
            "Engine: encoder dimension does not match config");
    sel_.min_hold = cfg_.min_hold;
    sel_.switch_threshold = cfg_.switch_threshold;
    sel_.greedy_goal_prob = cfg_.greedy_goal_prob;
    noise_.mode = cfg_.fixed_expl_noise ? NoiseMode::fixed : NoiseMode::adaptive;
    noise_.sigma_fixed = cfg_.sigma_fixed;
    noise_.sigma_min = cfg_.sigma_min;
    noise_.sigma_max = cfg_.sigma_max;
    noise_.gain = cfg_.noise_gain;
    noise_.slope_ref = cfg_.slope_ref;
    log_.records.reserve(cfg_.iterations);
}

void Engine::step() {
    IterationRecord rec;
    rec.iter = iter_;

    // 1. Goal switch check. The very first iteration has no active goal
    // and selects unconditionally.
    std::vector<TrendReport> trends;
    auto all_trends = [&]() {
        trends.clear();
        trends.reserve(goal_bufs_.size());
        for (const ErrorBuffer& buf : goal_bufs_) {
            trends.push_back(buf.trend(cfg_.goal_regression_min));
        }
        return trends;
    };
    if (sel_.current_goal < 0) {
        sel_.current_goal = static_cast<int>(select_goal(all_trends(), policy_rng_));
        sel_.iterations_on_goal = 0;
    } else {
        const TrendReport current =
            goal_bufs_[static_cast<std::size_t>(sel_.current_goal)].trend(
                cfg_.goal_regression_min);
        if (should_switch(sel_, current, policy_rng_)) {
            sel_.current_goal = static_cast<int>(select_goal(all_trends(), policy_rng_));
            sel_.iterations_on_goal = 0;
        }
    }
    const std::size_t goal = static_cast<std::size_t>(sel_.current_goal);
    const Vec goal_pos = som_.position(goal);
    rec.goal_id = sel_.current_goal;

    // 2. Command inference.
    const MotorCommand cmd = inverse_.infer_command(goal_pos);
    rec.cmd_x = cmd.x;
    rec.cmd_y = cmd.y;

    // 3. Exploration noise on top of the command.
    const double sigma = exploration_sigma(noise_, mse_trend_);
    const MotorCommand executed =
        apply_noise(cmd, sigma, cfg_.greedy_move_prob, policy_rng_);
    rec.sigma = sigma;
    rec.exec_x = executed.x;
    rec.exec_y = executed.y;

    // 4. Movement: every waypoint becomes a visuo-motor sample.
    const MotorCommand before = robot_.position;
    rec.move_amplitude = std::hypot(executed.x - before.x, executed.y - before.y);
    for (const MotorCommand& wp : trajectory(robot_, executed, cfg_.traj_step)) {
        pending_.push_back({wp, encoder_->encode(render(scene_, wp, world_params_))});
    }

    // 5. Prediction error of the performed action against the goal.
    const MotorCommand pe_cmd = cfg_.pe_uses_executed ? executed : cmd;
    const double pe = prediction_error(goal_pos, forward_.predict_sensory(pe_cmd));
    goal_bufs_[goal].push(pe);
    rec.pe = pe;

    // 6. Model updates on every full batch; the moving goal map learns
    // from the same samples.
    while (pending_.size() >= cfg_.batch_size) {
        const std::vector<VisuoMotorSample> batch(
            pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(cfg_.batch_size));
        pending_.erase(pending_.begin(),
                       pending_.begin() + static_cast<std::ptrdiff_t>(cfg_.batch_size));
        update_models(inverse_, forward_, batch, memory_, cfg_.adadelta(), train_rng_,
                      memory_rng_);
        if (!cfg_.fixed_goal_som) {
            for (const VisuoMotorSample& s : batch) {
                som_.train_step(s.sensory);
            }
        }
    }

    // 7. Periodic evaluation: general error trend and buffer capacity.
    if (iter_ % cfg_.mse_log_period == 0) {
        rec.has_mse = true;
        rec.fwd_mse = test_mse_forward(forward_, test_set_);
        rec.inv_mse = test_mse_inverse(inverse_, test_set_);
        mse_buf_.push(rec.fwd_mse);
        mse_trend_ = mse_buf_.trend(cfg_.mse_regression_min);
        if (mse_trend_.defined) {
            adjust_capacity(goal_bufs_, mse_trend_.slope);
        }
        rec.mse_slope = mse_trend_;
    }

    // 8. Log line.
    rec.goal_slope = goal_bufs_[goal].trend(cfg_.goal_regression_min);
    rec.buf_capacity = goal_bufs_[goal].capacity();
    log_.records.push_back(rec);

    ++sel_.iterations_on_goal;
    ++iter_;
}

const RunLog& Engine::run_all() {
    while (iter_ < cfg_.iterations) {
        step();
    }
    log_.discarded_samples = pending_.size();
    return log_;
}

nlohmann::json Engine::checkpoint() const {
    nlohmann::json j;
    j["config"] = cfg_.to_json();
    j["scene"] = scene_.to_json();
    j["iteration"] = iter_;
    j["som"] = som_.to_json();
    j["inverse_net"] = inverse_.net().to_json();
    j["forward_net"] = forward_.net().to_json();
    j["memory"] = memory_.to_json();
    return j;
}

RunLog run_experiment(const ExperimentConfig& cfg, const SharedSetup& shared,
                      std::uint64_t run_seed) {
    Engine engine(cfg, shared, run_seed);
    return engine.run_all();
}

std::uint64_t run_seed_for(std::uint64_t base_seed, std::size_t exp_id, std::size_t run_idx) {
    return derive_seed(base_seed,
                       "exp" + std::to_string(exp_id) + "-run" + std::to_string(run_idx));
}

DoeResult run_doe(const ExperimentConfig& base, const SharedSetup& shared, std::size_t jobs) {
    if (jobs == 0) jobs = 1;
    DoeResult result;
    result.runs.resize(kExperimentRows * base.runs);
    for (std::size_t exp_id = 0; exp_id < kExperimentRows; ++exp_id) {
        for (std::size_t run_idx = 0; run_idx < base.runs; ++run_idx) {
            DoeRun& slot = result.runs[exp_id * base.runs + run_idx];
            slot.exp_id = exp_id;
            slot.run_idx = run_idx;
            slot.run_seed = run_seed_for(base.seed, exp_id, run_idx);
        }
    }

    std::mutex queue_mutex;
    std::size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (next >= result.runs.size()) return;
                mine = next++;
            }
            DoeRun& slot = result.runs[mine];
            ExperimentConfig cfg = base;
            apply_experiment_row(cfg, slot.exp_id);
            try {
                slot.log = run_experiment(cfg, shared, slot.run_seed);
                slot.ok = true;
            } catch (const std::exception& e) {
                slot.ok = false;
                slot.error = e.what();
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t n = std::min(jobs, result.runs.size());
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return result;
}

} // namespace pedyn
