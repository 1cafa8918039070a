#include "pedyn/models.hpp"

#include <stdexcept>

#include "pedyn/hexfloat.hpp"

namespace pedyn {

namespace {

std::vector<LayerSpec> hidden_stack(const std::vector<std::size_t>& widths, double dropout) {
    std::vector<LayerSpec> specs;
    specs.reserve(widths.size() + 1);
    for (std::size_t w : widths) {
        specs.push_back({w, Activation::relu, dropout});
    }
    return specs;
}

} // namespace

InverseModel::InverseModel(const ModelLayout& layout, std::uint64_t seed) {
    std::vector<LayerSpec> specs = hidden_stack(layout.inverse_hidden, layout.dropout_rate);
    specs.push_back({2, Activation::linear, 0.0});
    net_ = Network(specs, layout.sensory_dim, seed);
}

MotorCommand InverseModel::infer_command(const Vec& goal) const {
    const Vec out = net_.forward(goal);
    return clamp01(MotorCommand{out[0], out[1]});
}

ForwardModel::ForwardModel(const ModelLayout& layout, std::uint64_t seed) {
    std::vector<LayerSpec> specs = hidden_stack(layout.forward_hidden, 0.0);
    specs.push_back({layout.sensory_dim, Activation::sigmoid, 0.0});
    net_ = Network(specs, 2, seed);
}

Vec ForwardModel::predict_sensory(MotorCommand cmd) const {
    return net_.forward({cmd.x, cmd.y});
}

EpisodicMemory::EpisodicMemory(std::size_t capacity, double insert_prob)
    : capacity_(capacity), insert_prob_(insert_prob) {
    require(capacity >= 1, "EpisodicMemory: capacity must be at least 1");
    require(insert_prob >= 0.0 && insert_prob <= 1.0,
            "EpisodicMemory: insert_prob must be in [0,1]");
    store_.reserve(capacity);
}

void EpisodicMemory::offer(const VisuoMotorSample& sample, RngStream& rng) {
    if (rng.uniform() >= insert_prob_) {
        return;
    }
    if (store_.size() < capacity_) {
        store_.push_back(sample);
    } else {
        store_[rng.index(capacity_)] = sample;
    }
}

nlohmann::json EpisodicMemory::to_json() const {
    nlohmann::json j;
    j["capacity"] = capacity_;
    j["insert_prob"] = insert_prob_;
    j["samples"] = nlohmann::json::array();
    for (const VisuoMotorSample& s : store_) {
        nlohmann::json sj;
        sj["motor"] = {to_hex(s.motor.x), to_hex(s.motor.y)};
        nlohmann::json sen = nlohmann::json::array();
        for (double v : s.sensory) sen.push_back(to_hex(v));
        sj["sensory"] = std::move(sen);
        j["samples"].push_back(std::move(sj));
    }
    return j;
}

EpisodicMemory EpisodicMemory::from_json(const nlohmann::json& j) {
    EpisodicMemory mem(j.at("capacity").get<std::size_t>(), j.at("insert_prob").get<double>());
    for (const auto& sj : j.at("samples")) {
        VisuoMotorSample s;
        s.motor.x = from_hex(sj.at("motor")[0].get<std::string>());
        s.motor.y = from_hex(sj.at("motor")[1].get<std::string>());
        for (const auto& v : sj.at("sensory")) {
            s.sensory.push_back(from_hex(v.get<std::string>()));
        }
        mem.store_.push_back(std::move(s));
    }
    if (mem.store_.size() > mem.capacity_) {
        throw std::runtime_error("EpisodicMemory::from_json: more samples than capacity");
    }
    return mem;
}

double update_models(InverseModel& inv, ForwardModel& fwd,
                     const std::vector<VisuoMotorSample>& batch, EpisodicMemory& mem,
                     const AdaDeltaParams& params, RngStream& train_rng,
                     RngStream& mem_rng) {
    require(!batch.empty(), "update_models: empty batch");

    std::vector<Vec> motors;
    std::vector<Vec> sensories;
    motors.reserve(batch.size() + mem.size());
    sensories.reserve(batch.size() + mem.size());
    for (const VisuoMotorSample& s : batch) {
        motors.push_back({s.motor.x, s.motor.y});
        sensories.push_back(s.sensory);
    }
    for (const VisuoMotorSample& s : mem.samples()) {
        motors.push_back({s.motor.x, s.motor.y});
        sensories.push_back(s.sensory);
    }

    const double fwd_loss = fwd.net().train_batch(motors, sensories, params, train_rng);
    inv.net().train_batch(sensories, motors, params, train_rng);

    for (const VisuoMotorSample& s : batch) {
        mem.offer(s, mem_rng);
    }
    return fwd_loss;
}

double test_mse_forward(const ForwardModel& fwd, const TestSet& test) {
    require(!test.samples.empty(), "test_mse_forward: empty test set");
    double total = 0.0;
    for (const VisuoMotorSample& s : test.samples) {
        total += mse_loss(fwd.predict_sensory(s.motor), s.sensory);
    }
    return total / static_cast<double>(test.samples.size());
}

double test_mse_inverse(const InverseModel& inv, const TestSet& test) {
    require(!test.samples.empty(), "test_mse_inverse: empty test set");
    double total = 0.0;
    for (const VisuoMotorSample& s : test.samples) {
        const MotorCommand cmd = inv.infer_command(s.sensory);
        total += mse_loss({cmd.x, cmd.y}, {s.motor.x, s.motor.y});
    }
    return total / static_cast<double>(test.samples.size());
}

} // namespace pedyn
