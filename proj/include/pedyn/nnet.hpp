#ifndef PEDYN_NNET_HPP
#define PEDYN_NNET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "pedyn/common.hpp"
#include "pedyn/rng.hpp"

namespace pedyn {

enum class Activation { linear, relu, sigmoid };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct LayerSpec {
    std::size_t width = 0;
    Activation activation = Activation::linear;
    /// Probability of zeroing each output of this layer during training.
    /// Inverted dropout: survivors are scaled by 1/(1-rate), so evaluation
    /// needs no correction.
    double dropout_rate = 0.0;
};

struct AdaDeltaParams {
    double rho = 0.95;
    double epsilon = 1e-6;
};

double mse_loss(const Vec& pred, const Vec& target);

/// Dense feed-forward network trained by backpropagation with AdaDelta.
/// Plain value object: copy and move freely, no interior sharing between
/// instances. Passes reuse scratch buffers stored inside the object, so a
/// single instance must not be driven from two threads at once, not even
/// for evaluation; hand each thread its own copy instead.
class Network {
public:
    Network() = default;
    Network(std::vector<LayerSpec> specs, std::size_t input_dim, std::uint64_t seed);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t output_dim() const;
    std::size_t layer_count() const { return layers_.size(); }
    const LayerSpec& spec(std::size_t layer) const { return layers_[layer].spec; }

    /// Evaluation-mode pass: dropout inactive.
    Vec forward(const Vec& x) const;

    /// One gradient step on the batch: mean-over-batch MSE gradients via
    /// backpropagation (dropout active), then an AdaDelta update of every
    /// parameter. Returns the batch loss measured before the update, with
    /// the dropout masks applied.
    double train_batch(const std::vector<Vec>& inputs, const std::vector<Vec>& targets,
                       const AdaDeltaParams& params, RngStream& rng);

    /// Mean-over-batch MSE loss in evaluation mode, no parameter change.
    double batch_loss(const std::vector<Vec>& inputs, const std::vector<Vec>& targets) const;

    /// Mean-over-batch gradients in evaluation mode (dropout off), for
    /// verification against finite differences. Returns the batch loss;
    /// fills one flat gradient vector per layer for weights and biases,
    /// shaped like the parameters.
    double batch_gradients(const std::vector<Vec>& inputs, const std::vector<Vec>& targets,
                           std::vector<Vec>& grad_w, std::vector<Vec>& grad_b) const;

    /// Parameter access by (layer, flat index); weights are row-major
    /// [output][input]. Tests use this to perturb single parameters.
    double& weight(std::size_t layer, std::size_t flat) { return layers_[layer].w[flat]; }
    double& bias(std::size_t layer, std::size_t flat) { return layers_[layer].b[flat]; }
    const Vec& weights(std::size_t layer) const { return layers_[layer].w; }
    const Vec& biases(std::size_t layer) const { return layers_[layer].b; }

    /// Copies a contiguous run of layers into a standalone network, weights
    /// and optimizer state included. Splits a jointly trained autoencoder
    /// into its encoder and decoder halves.
    Network slice(std::size_t first_layer, std::size_t count) const;

    nlohmann::json to_json() const;
    static Network from_json(const nlohmann::json& j);

    bool operator==(const Network& other) const;

private:
    struct Layer {
        LayerSpec spec;
        std::size_t fan_in = 0;
        Vec w;  // fan_in * width, row-major [output][input]
        Vec b;  // width
        Vec eg2_w, ed2_w, eg2_b, ed2_b;  // AdaDelta accumulators
    };

    struct LayerScratch {
        Vec pre;     // activations before dropout
        Vec post;    // activations after dropout, input to the next layer
        Vec mask;    // dropout scale per unit, 0 or 1/(1-rate)
        Vec delta;   // dL/d(pre-activation)
        Vec grad_w, grad_b;
    };

    void size_scratch() const;
    const Vec& pass(const Vec& x, bool train_mode, RngStream* rng) const;
    double accumulate_gradients(const std::vector<Vec>& inputs,
                                const std::vector<Vec>& targets,
                                bool train_mode, RngStream* rng) const;

    std::size_t input_dim_ = 0;
    std::vector<Layer> layers_;
    mutable std::vector<LayerScratch> scratch_;
};

} // namespace pedyn

#endif // PEDYN_NNET_HPP
