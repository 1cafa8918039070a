#ifndef PEDYN_ENCODER_HPP
#define PEDYN_ENCODER_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pedyn/common.hpp"
#include "pedyn/nnet.hpp"

namespace pedyn {

/// Maps rendered images to low-dimensional sensory states. Implementations
/// are frozen during experiments: identical images always yield identical
/// codes. Parallel runs should hand each worker its own clone, since the
/// autoencoder variant reuses internal pass buffers.
class SensoryEncoder {
public:
    virtual ~SensoryEncoder() = default;
    virtual std::size_t dim() const = 0;
    virtual Vec encode(const Image& img) const = 0;
    virtual std::unique_ptr<SensoryEncoder> clone() const = 0;
};

/// Dense autoencoder trained on rendered images; the encoder half produces
/// the sensory states, the decoder half exists for reconstruction checks.
/// Both halves are frozen once pretraining finishes.
class AutoencoderModel : public SensoryEncoder {
public:
    AutoencoderModel(Network encoder_net, Network decoder_net,
                     std::size_t image_width, std::size_t image_height);

    std::size_t dim() const override { return encoder_net_.output_dim(); }
    Vec encode(const Image& img) const override;
    std::unique_ptr<SensoryEncoder> clone() const override;

    /// Round trip through the bottleneck; same shape as the input image.
    Image reconstruct(const Image& img) const;

    std::size_t image_width() const { return image_width_; }
    std::size_t image_height() const { return image_height_; }
    const Network& encoder_net() const { return encoder_net_; }
    const Network& decoder_net() const { return decoder_net_; }

    nlohmann::json to_json() const;
    static AutoencoderModel from_json(const nlohmann::json& j);
    bool operator==(const AutoencoderModel& other) const;

private:
    Network encoder_net_;
    Network decoder_net_;
    std::size_t image_width_;
    std::size_t image_height_;
};

/// Analytic stand-in encoder for fast tests: the image is cut into
/// horizontal bands and each code component is one band's mean intensity.
/// No training, trivially deterministic, codomain [0,1].
class IdentityFeaturesEncoder : public SensoryEncoder {
public:
    IdentityFeaturesEncoder(std::size_t bands, std::size_t image_width,
                            std::size_t image_height);

    std::size_t dim() const override { return bands_; }
    Vec encode(const Image& img) const override;
    std::unique_ptr<SensoryEncoder> clone() const override;

private:
    std::size_t bands_;
    std::size_t image_width_;
    std::size_t image_height_;
};

struct EncoderTraining {
    std::size_t latent_dim = 8;
    std::size_t hidden = 64;
    std::size_t epochs = 40;
    std::size_t batch_size = 16;
    double holdout_fraction = 0.1;
    AdaDeltaParams adadelta;
};

struct PretrainStats {
    std::size_t corpus_size = 0;
    std::size_t train_size = 0;
    std::size_t holdout_size = 0;
    /// Reconstruction MSE over the training images after the last epoch.
    double train_mse = 0.0;
    /// Reconstruction MSE over the held-out images.
    double holdout_mse = 0.0;
    /// MSE of the constant per-pixel-training-mean predictor on the same
    /// held-out images; the bar the autoencoder has to beat.
    double baseline_mse = 0.0;
    bool trained = false;

    nlohmann::json to_json() const;
};

/// Trains encoder and decoder jointly on reconstruction MSE, then splits
/// and freezes them. A fraction of the corpus is held out before training
/// and used, together with a mean-image baseline, to judge quality.
std::pair<AutoencoderModel, PretrainStats> pretrain_autoencoder(
    const std::vector<Image>& images, const EncoderTraining& cfg, std::uint64_t seed);

} // namespace pedyn

#endif // PEDYN_ENCODER_HPP
