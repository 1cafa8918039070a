#ifndef PEDYN_ENGINE_HPP
#define PEDYN_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "pedyn/config.hpp"
#include "pedyn/encoder.hpp"
#include "pedyn/models.hpp"
#include "pedyn/monitor.hpp"
#include "pedyn/policy.hpp"
#include "pedyn/som.hpp"
#include "pedyn/world.hpp"

namespace pedyn {

/// One per-iteration log line; the MSE fields are filled only on the
/// iterations where the test-set evaluation runs.
struct IterationRecord {
    std::size_t iter = 0;
    int goal_id = -1;
    double cmd_x = 0.0, cmd_y = 0.0;
    double exec_x = 0.0, exec_y = 0.0;
    double sigma = 0.0;
    double pe = 0.0;
    TrendReport goal_slope;
    std::size_t buf_capacity = 0;
    double move_amplitude = 0.0;
    bool has_mse = false;
    double fwd_mse = 0.0;
    double inv_mse = 0.0;
    TrendReport mse_slope;
};

struct RunLog {
    std::vector<IterationRecord> records;
    /// Samples left in an unfinished batch when the run ended; they never
    /// trained anything.
    std::size_t discarded_samples = 0;
};

/// Inputs shared by every experiment and run of one series: the scene, the
/// frozen encoder, and the test set. Built once, reused everywhere, so all
/// configurations are measured against identical ground.
struct SharedSetup {
    Scene scene;
    std::unique_ptr<SensoryEncoder> encoder;
    TestSet test_set;
    PretrainStats encoder_stats;
};

/// Derives the scene/test-set/encoder seeds from the config seed, renders
/// the corpus, and pretrains the encoder (or builds the analytic one).
SharedSetup build_shared_setup(const ExperimentConfig& cfg);

/// Same, but with an already-pretrained encoder (loaded from disk).
SharedSetup build_shared_setup(const ExperimentConfig& cfg,
                               std::unique_ptr<SensoryEncoder> encoder);

/// One experiment run: owns every piece of mutable state and advances the
/// iteration loop. Construction performs all per-run initialization,
/// including goal-map pretraining in fixed-goal-map mode. The engine keeps
/// its own clone of the encoder, so engines may run on parallel threads.
class Engine {
public:
    Engine(const ExperimentConfig& cfg, const SharedSetup& shared, std::uint64_t run_seed);

    /// Runs one iteration of the loop:
    ///   1. goal switch check, 2. command inference, 3. exploration noise,
    ///   4. movement (render + encode every waypoint), 5. prediction error
    ///   into the active goal's buffer, 6. model updates per full batch,
    ///   7. periodic test-set MSE, trend and capacity update, 8. log line.
    void step();

    /// Loops step() for the configured number of iterations.
    const RunLog& run_all();

    std::size_t iteration() const { return iter_; }
    const RunLog& log() const { return log_; }
    const SomGrid& som() const { return som_; }
    const EpisodicMemory& memory() const { return memory_; }
    const std::vector<ErrorBuffer>& goal_buffers() const { return goal_bufs_; }
    const ErrorBuffer& mse_buffer() const { return mse_buf_; }
    int current_goal() const { return sel_.current_goal; }

    /// Full mutable state as one document: config, scene, goal map, nets,
    /// memory, iteration count.
    nlohmann::json checkpoint() const;

private:
    void log_iteration(const IterationRecord& rec);

    ExperimentConfig cfg_;
    Scene scene_;
    std::unique_ptr<SensoryEncoder> encoder_;
    TestSet test_set_;
    WorldParams world_params_;

    RobotState robot_;
    SomGrid som_;
    InverseModel inverse_;
    ForwardModel forward_;
    EpisodicMemory memory_;
    std::vector<ErrorBuffer> goal_bufs_;
    ErrorBuffer mse_buf_;
    GoalSelectionState sel_;
    NoisePolicy noise_;
    TrendReport mse_trend_;

    RngStream policy_rng_;
    RngStream train_rng_;
    RngStream memory_rng_;

    std::vector<VisuoMotorSample> pending_;
    std::size_t iter_ = 0;
    RunLog log_;
};

/// Convenience wrapper: build an engine, run it to completion.
RunLog run_experiment(const ExperimentConfig& cfg, const SharedSetup& shared,
                      std::uint64_t run_seed);

/// Seed for run `run_idx` of design row `exp_id`, derived from the
/// config seed (or an override of it).
std::uint64_t run_seed_for(std::uint64_t base_seed, std::size_t exp_id, std::size_t run_idx);

struct DoeRun {
    std::size_t exp_id = 0;
    std::size_t run_idx = 0;
    std::uint64_t run_seed = 0;
    bool ok = false;
    std::string error;
    RunLog log;
};

struct DoeResult {
    std::vector<DoeRun> runs;  // exp-major order: exp 0 run 0, exp 0 run 1, ...
};

/// All 8 design rows x cfg.runs seeds. Individual run failures are
/// recorded and the harness continues. `jobs` bounds worker threads.
DoeResult run_doe(const ExperimentConfig& base, const SharedSetup& shared, std::size_t jobs);

} // namespace pedyn

#endif // PEDYN_ENGINE_HPP
