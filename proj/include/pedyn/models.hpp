#ifndef PEDYN_MODELS_HPP
#define PEDYN_MODELS_HPP

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "pedyn/common.hpp"
#include "pedyn/nnet.hpp"
#include "pedyn/rng.hpp"
#include "pedyn/world.hpp"

namespace pedyn {

struct ModelLayout {
    std::size_t sensory_dim = 8;
    std::vector<std::size_t> inverse_hidden = {64, 32};
    std::vector<std::size_t> forward_hidden = {32, 64};
    double dropout_rate = 0.1;
};

/// Controller: desired sensory state in, motor command out. Hidden layers
/// are ReLU with dropout; the two linear outputs are clamped into motor
/// bounds so the command is always executable.
class InverseModel {
public:
    InverseModel(const ModelLayout& layout, std::uint64_t seed);
    explicit InverseModel(Network net) : net_(std::move(net)) {
        require(net_.output_dim() == 2, "InverseModel: net must output 2 motor components");
    }

    MotorCommand infer_command(const Vec& goal) const;

    Network& net() { return net_; }
    const Network& net() const { return net_; }

private:
    Network net_;
};

/// Predictor: motor command in, expected sensory state out. Sigmoid output
/// keeps predictions inside the sensory codomain; no dropout.
class ForwardModel {
public:
    ForwardModel(const ModelLayout& layout, std::uint64_t seed);
    explicit ForwardModel(Network net) : net_(std::move(net)) {
        require(net_.input_dim() == 2, "ForwardModel: net must take 2 motor components");
    }

    Vec predict_sensory(MotorCommand cmd) const;

    Network& net() { return net_; }
    const Network& net() const { return net_; }

private:
    Network net_;
};

/// Bounded store of past observations mixed into every training batch so
/// old regions of the workspace are not forgotten. Samples enter rarely
/// (insert_prob) and, once the store is full, displace a uniformly random
/// resident.
class EpisodicMemory {
public:
    EpisodicMemory(std::size_t capacity, double insert_prob);

    void offer(const VisuoMotorSample& sample, RngStream& rng);

    std::size_t size() const { return store_.size(); }
    std::size_t capacity() const { return capacity_; }
    double insert_prob() const { return insert_prob_; }
    const std::vector<VisuoMotorSample>& samples() const { return store_; }

    nlohmann::json to_json() const;
    static EpisodicMemory from_json(const nlohmann::json& j);

private:
    std::vector<VisuoMotorSample> store_;
    std::size_t capacity_;
    double insert_prob_;
};

/// One training round: both nets train on the batch plus a snapshot of the
/// memory taken up front (so nothing trains twice in one round), forward
/// net first; afterwards every batch sample is offered to the memory.
/// Returns the forward net's batch loss.
double update_models(InverseModel& inv, ForwardModel& fwd,
                     const std::vector<VisuoMotorSample>& batch, EpisodicMemory& mem,
                     const AdaDeltaParams& params, RngStream& train_rng,
                     RngStream& mem_rng);

/// Mean prediction error of the forward model over the test set.
double test_mse_forward(const ForwardModel& fwd, const TestSet& test);

/// Mean command error of the inverse model over the test set.
double test_mse_inverse(const InverseModel& inv, const TestSet& test);

} // namespace pedyn

#endif // PEDYN_MODELS_HPP
