#ifndef PEDYN_CONFIG_HPP
#define PEDYN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "pedyn/nnet.hpp"

namespace pedyn {

/// Everything one experiment series needs, in one flat document. The
/// canonical 8-row design crosses fixed_goal_som x fixed_expl_noise x
/// greedy_move_prob; apply_experiment_row() writes one row's factors.
struct ExperimentConfig {
    std::uint64_t seed = 1;

    // Design factors.
    bool fixed_goal_som = false;
    bool fixed_expl_noise = false;
    double greedy_move_prob = 0.0;

    // Run scale.
    std::size_t iterations = 2000;
    std::size_t runs = 5;

    // Cadences.
    std::size_t mse_log_period = 40;
    std::size_t batch_size = 16;

    // Sensory encoding.
    std::size_t sensory_dim = 8;
    std::size_t image_width = 16;
    std::size_t image_height = 16;
    std::string encoder_kind = "autoencoder";  // or "identity"
    std::size_t encoder_hidden = 64;
    std::size_t encoder_epochs = 40;
    std::size_t encoder_batch = 16;
    double encoder_holdout = 0.1;
    std::size_t corpus_grid = 45;

    // World.
    std::size_t blob_count = 6;
    double window = 0.3;
    double traj_step = 0.02;
    std::size_t test_set_size = 200;
    double start_x = 0.5;
    double start_y = 0.5;

    // Goal map.
    std::size_t som_rows = 3;
    std::size_t som_cols = 3;
    double som_lr0 = 0.5;
    double som_sigma0 = 1.0;
    double som_tau = 2000.0;
    std::size_t som_pretrain_samples = 2000;

    // Internal models.
    std::vector<std::size_t> inverse_hidden = {64, 32};
    std::vector<std::size_t> forward_hidden = {32, 64};
    double dropout_rate = 0.1;
    double adadelta_rho = 0.95;
    double adadelta_epsilon = 1e-6;
    std::size_t memory_capacity = 1000;
    double memory_insert_prob = 0.01;

    // Error monitoring.
    std::size_t goal_buf_min = 10;
    std::size_t goal_buf_max = 50;
    std::size_t mse_buffer_capacity = 10;
    std::size_t goal_regression_min = 5;
    std::size_t mse_regression_min = 2;

    // Goal selection and exploration.
    std::size_t min_hold = 50;
    double switch_threshold = 1e-4;
    double greedy_goal_prob = 0.01;
    double sigma_fixed = 0.05;
    double sigma_min = 0.01;
    double sigma_max = 0.30;
    double noise_gain = 1.0;
    double slope_ref = 0.005;

    /// Whether the prediction error uses the executed (noisy) command or
    /// the clean goal-directed one.
    bool pe_uses_executed = true;

    AdaDeltaParams adadelta() const { return {adadelta_rho, adadelta_epsilon}; }

    /// Throws std::invalid_argument describing the first violated bound.
    void validate() const;

    nlohmann::json to_json() const;
    /// Rejects unknown keys so typos cannot silently fall back to
    /// defaults; absent keys keep their defaults.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load_file(const std::string& path);
};

/// Number of rows in the canonical design.
inline constexpr std::size_t kExperimentRows = 8;

/// Writes design row `id` (0..7) into the config: bit 0 toggles the fixed
/// goal map, bit 1 the fixed exploration noise, and rows 4..7 add 3%
/// greedy movements.
void apply_experiment_row(ExperimentConfig& cfg, std::size_t id);

} // namespace pedyn

#endif // PEDYN_CONFIG_HPP
