#include "pedyn/nnet.hpp"

#include <cmath>
#include <stdexcept>

#include "pedyn/hexfloat.hpp"
#include "pedyn/kernels.hpp"

namespace pedyn {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
    }
    throw std::invalid_argument("unknown activation");
}

Activation activation_from_name(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    throw std::invalid_argument("unknown activation name: " + name);
}

double mse_loss(const Vec& pred, const Vec& target) {
    require(pred.size() == target.size(), "mse_loss: length mismatch");
    require(!pred.empty(), "mse_loss: empty vectors");
    return kernels::sum_sq_diff(pred.data(), target.data(), pred.size()) /
           static_cast<double>(pred.size());
}

namespace {

double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::linear: return z;
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
}

/// Derivative of the activation expressed through its own output value.
double activation_grad(Activation a, double out) {
    switch (a) {
        case Activation::linear: return 1.0;
        case Activation::relu: return out > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return out * (1.0 - out);
    }
    return 1.0;
}

} // namespace

Network::Network(std::vector<LayerSpec> specs, std::size_t input_dim, std::uint64_t seed) {
    require(!specs.empty(), "Network: layer list is empty");
    require(input_dim >= 1, "Network: input_dim must be at least 1");
    input_dim_ = input_dim;

    RngStream rng(seed);
    std::size_t fan_in = input_dim;
    layers_.reserve(specs.size());
    for (const LayerSpec& spec : specs) {
        require(spec.width >= 1, "Network: layer width must be at least 1");
        require(spec.dropout_rate >= 0.0 && spec.dropout_rate < 1.0,
                "Network: dropout_rate must be in [0,1)");
        Layer layer;
        layer.spec = spec;
        layer.fan_in = fan_in;
        layer.w.resize(fan_in * spec.width);
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + spec.width));
        for (double& w : layer.w) {
            w = rng.uniform(-limit, limit);
        }
        layer.b.assign(spec.width, 0.0);
        layer.eg2_w.assign(layer.w.size(), 0.0);
        layer.ed2_w.assign(layer.w.size(), 0.0);
        layer.eg2_b.assign(spec.width, 0.0);
        layer.ed2_b.assign(spec.width, 0.0);
        layers_.push_back(std::move(layer));
        fan_in = spec.width;
    }
}

std::size_t Network::output_dim() const {
    return layers_.empty() ? input_dim_ : layers_.back().spec.width;
}

void Network::size_scratch() const {
    if (scratch_.size() == layers_.size()) return;
    scratch_.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const std::size_t width = layers_[l].spec.width;
        scratch_[l].pre.resize(width);
        scratch_[l].post.resize(width);
        scratch_[l].mask.resize(width);
        scratch_[l].delta.resize(width);
        scratch_[l].grad_w.resize(layers_[l].w.size());
        scratch_[l].grad_b.resize(width);
    }
}

const Vec& Network::pass(const Vec& x, bool train_mode, RngStream* rng) const {
    require(x.size() == input_dim_, "Network: input dimension mismatch");
    size_scratch();
    const Vec* in = &x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        LayerScratch& s = scratch_[l];
        const std::size_t width = layer.spec.width;
        for (std::size_t o = 0; o < width; ++o) {
            const double z =
                kernels::dot(layer.w.data() + o * layer.fan_in, in->data(), layer.fan_in) +
                layer.b[o];
            s.pre[o] = apply_activation(layer.spec.activation, z);
        }
        if (train_mode && layer.spec.dropout_rate > 0.0) {
            const double rate = layer.spec.dropout_rate;
            const double keep_scale = 1.0 / (1.0 - rate);
            for (std::size_t o = 0; o < width; ++o) {
                s.mask[o] = rng->bernoulli(rate) ? 0.0 : keep_scale;
                s.post[o] = s.pre[o] * s.mask[o];
            }
        } else {
            s.post = s.pre;
        }
        in = &s.post;
    }
    return *in;
}

Vec Network::forward(const Vec& x) const {
    return pass(x, false, nullptr);
}

double Network::accumulate_gradients(const std::vector<Vec>& inputs,
                                     const std::vector<Vec>& targets,
                                     bool train_mode, RngStream* rng) const {
    require(!inputs.empty(), "Network: empty batch");
    require(inputs.size() == targets.size(), "Network: inputs/targets size mismatch");
    size_scratch();
    for (LayerScratch& s : scratch_) {
        s.grad_w.assign(s.grad_w.size(), 0.0);
        s.grad_b.assign(s.grad_b.size(), 0.0);
    }

    const std::size_t out_dim = output_dim();
    const double inv_batch = 1.0 / static_cast<double>(inputs.size());
    double loss = 0.0;

    for (std::size_t n = 0; n < inputs.size(); ++n) {
        require(targets[n].size() == out_dim, "Network: target dimension mismatch");
        const Vec& out = pass(inputs[n], train_mode, rng);
        loss += mse_loss(out, targets[n]);

        // dL/d(post) of the output layer; L is the mean over batch of the
        // per-sample component-mean squared error.
        LayerScratch& top = scratch_.back();
        const double coeff = 2.0 * inv_batch / static_cast<double>(out_dim);
        for (std::size_t o = 0; o < out_dim; ++o) {
            top.delta[o] = coeff * (out[o] - targets[n][o]);
        }

        for (std::size_t l = layers_.size(); l-- > 0;) {
            const Layer& layer = layers_[l];
            LayerScratch& s = scratch_[l];
            const std::size_t width = layer.spec.width;
            const bool dropped = train_mode && layer.spec.dropout_rate > 0.0;
            for (std::size_t o = 0; o < width; ++o) {
                double g = s.delta[o];
                if (dropped) g *= s.mask[o];
                s.delta[o] = g * activation_grad(layer.spec.activation, s.pre[o]);
            }

            const Vec& layer_in = (l == 0) ? inputs[n] : scratch_[l - 1].post;
            for (std::size_t o = 0; o < width; ++o) {
                const double d = s.delta[o];
                if (d != 0.0) {
                    kernels::axpy(d, layer_in.data(), s.grad_w.data() + o * layer.fan_in,
                                  layer.fan_in);
                }
                s.grad_b[o] += d;
            }

            if (l > 0) {
                // dL/d(post) of the layer below, written into its delta slot.
                Vec& below = scratch_[l - 1].delta;
                below.assign(below.size(), 0.0);
                for (std::size_t o = 0; o < width; ++o) {
                    const double d = s.delta[o];
                    if (d != 0.0) {
                        kernels::axpy(d, layer.w.data() + o * layer.fan_in, below.data(),
                                      layer.fan_in);
                    }
                }
            }
        }
    }

    loss *= inv_batch;
    if (!std::isfinite(loss)) {
        throw std::runtime_error("Network: non-finite training loss, diverged");
    }
    return loss;
}

double Network::train_batch(const std::vector<Vec>& inputs, const std::vector<Vec>& targets,
                            const AdaDeltaParams& params, RngStream& rng) {
    require(params.rho > 0.0 && params.rho < 1.0, "AdaDelta: rho must be in (0,1)");
    require(params.epsilon > 0.0, "AdaDelta: epsilon must be positive");
    const double loss = accumulate_gradients(inputs, targets, true, &rng);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Layer& layer = layers_[l];
        const LayerScratch& s = scratch_[l];
        kernels::adadelta_step(layer.w.data(), s.grad_w.data(), layer.eg2_w.data(),
                               layer.ed2_w.data(), params.rho, params.epsilon, layer.w.size());
        kernels::adadelta_step(layer.b.data(), s.grad_b.data(), layer.eg2_b.data(),
                               layer.ed2_b.data(), params.rho, params.epsilon, layer.b.size());
    }
    return loss;
}

double Network::batch_loss(const std::vector<Vec>& inputs, const std::vector<Vec>& targets) const {
    require(!inputs.empty(), "Network: empty batch");
    require(inputs.size() == targets.size(), "Network: inputs/targets size mismatch");
    double loss = 0.0;
    for (std::size_t n = 0; n < inputs.size(); ++n) {
        loss += mse_loss(pass(inputs[n], false, nullptr), targets[n]);
    }
    return loss / static_cast<double>(inputs.size());
}

double Network::batch_gradients(const std::vector<Vec>& inputs, const std::vector<Vec>& targets,
                                std::vector<Vec>& grad_w, std::vector<Vec>& grad_b) const {
    const double loss = accumulate_gradients(inputs, targets, false, nullptr);
    grad_w.resize(layers_.size());
    grad_b.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        grad_w[l] = scratch_[l].grad_w;
        grad_b[l] = scratch_[l].grad_b;
    }
    return loss;
}

Network Network::slice(std::size_t first_layer, std::size_t count) const {
    require(count >= 1, "Network::slice: empty slice");
    require(first_layer + count <= layers_.size(), "Network::slice: range out of bounds");
    Network out;
    out.input_dim_ = (first_layer == 0) ? input_dim_ : layers_[first_layer - 1].spec.width;
    out.layers_.assign(layers_.begin() + static_cast<std::ptrdiff_t>(first_layer),
                       layers_.begin() + static_cast<std::ptrdiff_t>(first_layer + count));
    return out;
}

namespace {

nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (double x : v) arr.push_back(to_hex(x));
    return arr;
}

Vec vec_from_json(const nlohmann::json& arr) {
    Vec v;
    v.reserve(arr.size());
    for (const auto& x : arr) v.push_back(from_hex(x.get<std::string>()));
    return v;
}

} // namespace

nlohmann::json Network::to_json() const {
    nlohmann::json j;
    j["input_dim"] = input_dim_;
    j["layers"] = nlohmann::json::array();
    for (const Layer& layer : layers_) {
        nlohmann::json lj;
        lj["width"] = layer.spec.width;
        lj["activation"] = activation_name(layer.spec.activation);
        lj["dropout_rate"] = layer.spec.dropout_rate;
        lj["weights"] = vec_to_json(layer.w);
        lj["biases"] = vec_to_json(layer.b);
        lj["eg2_w"] = vec_to_json(layer.eg2_w);
        lj["ed2_w"] = vec_to_json(layer.ed2_w);
        lj["eg2_b"] = vec_to_json(layer.eg2_b);
        lj["ed2_b"] = vec_to_json(layer.ed2_b);
        j["layers"].push_back(std::move(lj));
    }
    return j;
}

Network Network::from_json(const nlohmann::json& j) {
    Network net;
    net.input_dim_ = j.at("input_dim").get<std::size_t>();
    std::size_t fan_in = net.input_dim_;
    for (const auto& lj : j.at("layers")) {
        Layer layer;
        layer.spec.width = lj.at("width").get<std::size_t>();
        layer.spec.activation = activation_from_name(lj.at("activation").get<std::string>());
        layer.spec.dropout_rate = lj.at("dropout_rate").get<double>();
        layer.fan_in = fan_in;
        layer.w = vec_from_json(lj.at("weights"));
        layer.b = vec_from_json(lj.at("biases"));
        layer.eg2_w = vec_from_json(lj.at("eg2_w"));
        layer.ed2_w = vec_from_json(lj.at("ed2_w"));
        layer.eg2_b = vec_from_json(lj.at("eg2_b"));
        layer.ed2_b = vec_from_json(lj.at("ed2_b"));
        if (layer.w.size() != fan_in * layer.spec.width || layer.b.size() != layer.spec.width) {
            throw std::runtime_error("Network::from_json: parameter shape mismatch");
        }
        fan_in = layer.spec.width;
        net.layers_.push_back(std::move(layer));
    }
    require(!net.layers_.empty(), "Network::from_json: no layers");
    return net;
}

bool Network::operator==(const Network& other) const {
    if (input_dim_ != other.input_dim_ || layers_.size() != other.layers_.size()) return false;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& a = layers_[l];
        const Layer& b = other.layers_[l];
        if (a.spec.width != b.spec.width || a.spec.activation != b.spec.activation ||
            a.spec.dropout_rate != b.spec.dropout_rate) {
            return false;
        }
        if (a.w != b.w || a.b != b.b || a.eg2_w != b.eg2_w || a.ed2_w != b.ed2_w ||
            a.eg2_b != b.eg2_b || a.ed2_b != b.ed2_b) {
            return false;
        }
    }
    return true;
}

} // namespace pedyn
