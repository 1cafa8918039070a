#include "pedyn/encoder.hpp"

#include <algorithm>
#include <stdexcept>

#include "pedyn/rng.hpp"

namespace pedyn {

AutoencoderModel::AutoencoderModel(Network encoder_net, Network decoder_net,
                                   std::size_t image_width, std::size_t image_height)
    : encoder_net_(std::move(encoder_net)),
      decoder_net_(std::move(decoder_net)),
      image_width_(image_width),
      image_height_(image_height) {
    require(encoder_net_.input_dim() == image_width * image_height,
            "AutoencoderModel: encoder input does not match image size");
    require(encoder_net_.output_dim() == decoder_net_.input_dim(),
            "AutoencoderModel: encoder output and decoder input differ");
    require(decoder_net_.output_dim() == image_width * image_height,
            "AutoencoderModel: decoder output does not match image size");
}

Vec AutoencoderModel::encode(const Image& img) const {
    require(img.width == image_width_ && img.height == image_height_,
            "AutoencoderModel: image dimensions mismatch");
    return encoder_net_.forward(img.pixels);
}

std::unique_ptr<SensoryEncoder> AutoencoderModel::clone() const {
    return std::make_unique<AutoencoderModel>(*this);
}

Image AutoencoderModel::reconstruct(const Image& img) const {
    Image out(img.width, img.height);
    out.pixels = decoder_net_.forward(encode(img));
    return out;
}

nlohmann::json AutoencoderModel::to_json() const {
    nlohmann::json j;
    j["image_width"] = image_width_;
    j["image_height"] = image_height_;
    j["encoder_net"] = encoder_net_.to_json();
    j["decoder_net"] = decoder_net_.to_json();
    return j;
}

AutoencoderModel AutoencoderModel::from_json(const nlohmann::json& j) {
    return AutoencoderModel(Network::from_json(j.at("encoder_net")),
                            Network::from_json(j.at("decoder_net")),
                            j.at("image_width").get<std::size_t>(),
                            j.at("image_height").get<std::size_t>());
}

bool AutoencoderModel::operator==(const AutoencoderModel& other) const {
    return image_width_ == other.image_width_ && image_height_ == other.image_height_ &&
           encoder_net_ == other.encoder_net_ && decoder_net_ == other.decoder_net_;
}

IdentityFeaturesEncoder::IdentityFeaturesEncoder(std::size_t bands, std::size_t image_width,
                                                 std::size_t image_height)
    : bands_(bands), image_width_(image_width), image_height_(image_height) {
    require(bands >= 1, "IdentityFeaturesEncoder: need at least 1 band");
    require(image_height >= bands, "IdentityFeaturesEncoder: more bands than image rows");
}

Vec IdentityFeaturesEncoder::encode(const Image& img) const {
    require(img.width == image_width_ && img.height == image_height_,
            "IdentityFeaturesEncoder: image dimensions mismatch");
    Vec code(bands_, 0.0);
    for (std::size_t b = 0; b < bands_; ++b) {
        const std::size_t row_begin = b * image_height_ / bands_;
        const std::size_t row_end = (b + 1) * image_height_ / bands_;
        double total = 0.0;
        for (std::size_t y = row_begin; y < row_end; ++y) {
            for (std::size_t x = 0; x < image_width_; ++x) {
                total += img.at(x, y);
            }
        }
        code[b] = total / static_cast<double>((row_end - row_begin) * image_width_);
    }
    return code;
}

std::unique_ptr<SensoryEncoder> IdentityFeaturesEncoder::clone() const {
    return std::make_unique<IdentityFeaturesEncoder>(*this);
}

nlohmann::json PretrainStats::to_json() const {
    nlohmann::json j;
    j["corpus_size"] = corpus_size;
    j["train_size"] = train_size;
    j["holdout_size"] = holdout_size;
    j["train_mse"] = train_mse;
    j["holdout_mse"] = holdout_mse;
    j["baseline_mse"] = baseline_mse;
    j["trained"] = trained;
    return j;
}

namespace {

double mean_reconstruction_mse(const Network& net, const std::vector<Image>& images,
                               const std::vector<std::size_t>& idx) {
    double total = 0.0;
    for (std::size_t i : idx) {
        total += mse_loss(net.forward(images[i].pixels), images[i].pixels);
    }
    return total / static_cast<double>(idx.size());
}

} // namespace

std::pair<AutoencoderModel, PretrainStats> pretrain_autoencoder(
    const std::vector<Image>& images, const EncoderTraining& cfg, std::uint64_t seed) {
    require(!images.empty(), "pretrain_autoencoder: empty corpus");
    require(cfg.batch_size >= 1, "pretrain_autoencoder: batch_size must be at least 1");
    require(cfg.holdout_fraction >= 0.0 && cfg.holdout_fraction < 1.0,
            "pretrain_autoencoder: holdout_fraction must be in [0,1)");
    const std::size_t pixel_dim = images.front().size();
    for (const Image& img : images) {
        require(img.size() == pixel_dim, "pretrain_autoencoder: mixed image sizes");
    }

    std::vector<LayerSpec> specs = {
        {cfg.hidden, Activation::relu, 0.0},
        {cfg.latent_dim, Activation::sigmoid, 0.0},
        {cfg.hidden, Activation::relu, 0.0},
        {pixel_dim, Activation::sigmoid, 0.0},
    };
    Network net(specs, pixel_dim, derive_seed(seed, "net"));

    RngStream shuffle_rng(derive_seed(seed, "shuffle"));
    std::vector<std::size_t> order(images.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i-- > 1;) {
        std::swap(order[i], order[shuffle_rng.index(i + 1)]);
    }

    const std::size_t holdout_n =
        static_cast<std::size_t>(cfg.holdout_fraction * static_cast<double>(images.size()));
    std::vector<std::size_t> holdout(order.begin(),
                                     order.begin() + static_cast<std::ptrdiff_t>(holdout_n));
    std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(holdout_n),
                                   order.end());
    require(!train.empty(), "pretrain_autoencoder: holdout leaves no training images");
    // With no held-out images the quality numbers fall back to the
    // training set.
    const std::vector<std::size_t>& eval_idx = holdout.empty() ? train : holdout;

    AdaDeltaParams params = cfg.adadelta;
    std::vector<Vec> batch;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = train.size(); i-- > 1;) {
            std::swap(train[i], train[shuffle_rng.index(i + 1)]);
        }
        for (std::size_t start = 0; start < train.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(start + cfg.batch_size, train.size());
            batch.clear();
            for (std::size_t k = start; k < stop; ++k) {
                batch.push_back(images[train[k]].pixels);
            }
            net.train_batch(batch, batch, params, shuffle_rng);
        }
    }

    PretrainStats stats;
    stats.corpus_size = images.size();
    stats.train_size = train.size();
    stats.holdout_size = holdout.size();
    stats.trained = cfg.epochs > 0;

    Vec mean_image(pixel_dim, 0.0);
    for (std::size_t i : train) {
        for (std::size_t p = 0; p < pixel_dim; ++p) {
            mean_image[p] += images[i].pixels[p];
        }
    }
    for (double& v : mean_image) v /= static_cast<double>(train.size());
    double baseline = 0.0;
    for (std::size_t i : eval_idx) {
        baseline += mse_loss(mean_image, images[i].pixels);
    }
    stats.baseline_mse = baseline / static_cast<double>(eval_idx.size());
    stats.train_mse = mean_reconstruction_mse(net, images, train);
    stats.holdout_mse = mean_reconstruction_mse(net, images, eval_idx);

    const std::size_t w = images.front().width;
    const std::size_t h = images.front().height;
    AutoencoderModel model(net.slice(0, 2), net.slice(2, 2), w, h);
    return {std::move(model), stats};
}

} // namespace pedyn
