#include "pedyn/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace pedyn {

void ExperimentConfig::validate() const {
    require(greedy_move_prob >= 0.0 && greedy_move_prob <= 1.0,
            "config: greedy_move_prob must be in [0,1]");
    require(runs >= 1, "config: runs must be at least 1");
    require(mse_log_period >= 1, "config: mse_log_period must be at least 1");
    require(batch_size >= 1, "config: batch_size must be at least 1");
    require(sensory_dim >= 1, "config: sensory_dim must be at least 1");
    require(image_width >= 1 && image_height >= 1, "config: image dimensions must be positive");
    require(encoder_kind == "autoencoder" || encoder_kind == "identity",
            "config: encoder_kind must be \"autoencoder\" or \"identity\"");
    require(encoder_batch >= 1, "config: encoder_batch must be at least 1");
    require(encoder_holdout >= 0.0 && encoder_holdout < 1.0,
            "config: encoder_holdout must be in [0,1)");
    require(corpus_grid >= 2, "config: corpus_grid must be at least 2");
    require(blob_count >= 3, "config: blob_count must be at least 3");
    require(window > 0.0, "config: window must be positive");
    require(traj_step > 0.0, "config: traj_step must be positive");
    require(test_set_size >= 1, "config: test_set_size must be at least 1");
    require(start_x >= 0.0 && start_x <= 1.0 && start_y >= 0.0 && start_y <= 1.0,
            "config: start position must be in [0,1]^2");
    require(som_rows >= 1 && som_cols >= 1, "config: goal map must be at least 1x1");
    require(som_lr0 > 0.0 && som_sigma0 > 0.0 && som_tau > 0.0,
            "config: som_lr0, som_sigma0 and som_tau must be positive");
    require(!inverse_hidden.empty() && !forward_hidden.empty(),
            "config: models need at least one hidden layer");
    require(dropout_rate >= 0.0 && dropout_rate < 1.0, "config: dropout_rate must be in [0,1)");
    require(adadelta_rho > 0.0 && adadelta_rho < 1.0, "config: adadelta_rho must be in (0,1)");
    require(adadelta_epsilon > 0.0, "config: adadelta_epsilon must be positive");
    require(memory_capacity >= 1, "config: memory_capacity must be at least 1");
    require(memory_insert_prob >= 0.0 && memory_insert_prob <= 1.0,
            "config: memory_insert_prob must be in [0,1]");
    require(goal_buf_min >= 1 && goal_buf_min <= goal_buf_max,
            "config: need 1 <= goal_buf_min <= goal_buf_max");
    require(mse_buffer_capacity >= 1, "config: mse_buffer_capacity must be at least 1");
    require(goal_regression_min >= 2, "config: goal_regression_min must be at least 2");
    require(mse_regression_min >= 2, "config: mse_regression_min must be at least 2");
    require(switch_threshold >= 0.0, "config: switch_threshold must be non-negative");
    require(greedy_goal_prob >= 0.0 && greedy_goal_prob <= 1.0,
            "config: greedy_goal_prob must be in [0,1]");
    require(sigma_min > 0.0 && sigma_min <= sigma_fixed && sigma_fixed <= sigma_max,
            "config: need 0 < sigma_min <= sigma_fixed <= sigma_max");
    require(noise_gain > 0.0 && slope_ref > 0.0,
            "config: noise_gain and slope_ref must be positive");
}

namespace {

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

// Field table shared by the reader and the writer so the two cannot
// drift apart.
#define PEDYN_CONFIG_FIELDS(X)        \
    X(seed)                           \
    X(fixed_goal_som)                 \
    X(fixed_expl_noise)               \
    X(greedy_move_prob)               \
    X(iterations)                     \
    X(runs)                           \
    X(mse_log_period)                 \
    X(batch_size)                     \
    X(sensory_dim)                    \
    X(image_width)                    \
    X(image_height)                   \
    X(encoder_kind)                   \
    X(encoder_hidden)                 \
    X(encoder_epochs)                 \
    X(encoder_batch)                  \
    X(encoder_holdout)                \
    X(corpus_grid)                    \
    X(blob_count)                     \
    X(window)                         \
    X(traj_step)                      \
    X(test_set_size)                  \
    X(start_x)                        \
    X(start_y)                        \
    X(som_rows)                       \
    X(som_cols)                       \
    X(som_lr0)                        \
    X(som_sigma0)                     \
    X(som_tau)                        \
    X(som_pretrain_samples)           \
    X(inverse_hidden)                 \
    X(forward_hidden)                 \
    X(dropout_rate)                   \
    X(adadelta_rho)                   \
    X(adadelta_epsilon)               \
    X(memory_capacity)                \
    X(memory_insert_prob)             \
    X(goal_buf_min)                   \
    X(goal_buf_max)                   \
    X(mse_buffer_capacity)            \
    X(goal_regression_min)            \
    X(mse_regression_min)             \
    X(min_hold)                       \
    X(switch_threshold)               \
    X(greedy_goal_prob)               \
    X(sigma_fixed)                    \
    X(sigma_min)                      \
    X(sigma_max)                      \
    X(noise_gain)                     \
    X(slope_ref)                      \
    X(pe_uses_executed)

} // namespace

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
#define X(field) j[#field] = field;
    PEDYN_CONFIG_FIELDS(X)
#undef X
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
#define X(field) #field,
        PEDYN_CONFIG_FIELDS(X)
#undef X
    };
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) {
            throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
        }
    }
    ExperimentConfig cfg;
#define X(field) read_field(j, #field, cfg.field);
    PEDYN_CONFIG_FIELDS(X)
#undef X
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path);
    }
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

void apply_experiment_row(ExperimentConfig& cfg, std::size_t id) {
    require(id < kExperimentRows, "apply_experiment_row: id must be in 0..7");
    cfg.fixed_goal_som = (id & 1u) != 0;
    cfg.fixed_expl_noise = (id & 2u) != 0;
    cfg.greedy_move_prob = id >= 4 ? 0.03 : 0.0;
}

} // namespace pedyn
