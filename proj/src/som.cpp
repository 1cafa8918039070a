#include "pedyn/som.hpp"

#include <cmath>
#include <stdexcept>

#include "pedyn/hexfloat.hpp"
#include "pedyn/kernels.hpp"
#include "pedyn/rng.hpp"

namespace pedyn {

SomGrid::SomGrid(std::size_t rows, std::size_t cols, std::size_t dim, std::uint64_t seed,
                 double lr0, double sigma0, double tau)
    : rows_(rows), cols_(cols), dim_(dim), lr0_(lr0), sigma0_(sigma0), tau_(tau) {
    require(rows >= 1 && cols >= 1, "SomGrid: grid must be at least 1x1");
    require(dim >= 1, "SomGrid: dimension must be at least 1");
    require(lr0 > 0.0 && sigma0 > 0.0 && tau > 0.0,
            "SomGrid: lr0, sigma0 and tau must be positive");
    codebook_.resize(rows * cols * dim);
    RngStream rng(seed);
    for (double& w : codebook_) {
        w = rng.uniform();
    }
}

double SomGrid::learning_rate() const {
    return lr0_ * std::exp(-static_cast<double>(t_) / tau_);
}

double SomGrid::neighborhood_sigma() const {
    return sigma0_ * std::exp(-static_cast<double>(t_) / tau_);
}

std::size_t SomGrid::bmu(const Vec& x) const {
    require(x.size() == dim_, "SomGrid: input dimension mismatch");
    std::size_t best = 0;
    double best_d2 = kernels::sum_sq_diff(codebook_.data(), x.data(), dim_);
    for (std::size_t i = 1; i < neuron_count(); ++i) {
        const double d2 = kernels::sum_sq_diff(codebook_.data() + i * dim_, x.data(), dim_);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

void SomGrid::train_step(const Vec& x) {
    const std::size_t winner = bmu(x);
    const double lr = learning_rate();
    const double sigma = neighborhood_sigma();
    const double wr = static_cast<double>(winner / cols_);
    const double wc = static_cast<double>(winner % cols_);
    for (std::size_t i = 0; i < neuron_count(); ++i) {
        const double dr = static_cast<double>(i / cols_) - wr;
        const double dc = static_cast<double>(i % cols_) - wc;
        const double grid_d2 = dr * dr + dc * dc;
        const double h = std::exp(-grid_d2 / (2.0 * sigma * sigma));
        kernels::lerp_toward(codebook_.data() + i * dim_, x.data(), lr * h, dim_);
    }
    ++t_;
}

std::vector<Vec> SomGrid::goal_positions() const {
    std::vector<Vec> out;
    out.reserve(neuron_count());
    for (std::size_t i = 0; i < neuron_count(); ++i) {
        out.push_back(position(i));
    }
    return out;
}

Vec SomGrid::position(std::size_t neuron) const {
    require(neuron < neuron_count(), "SomGrid: neuron index out of range");
    const double* base = codebook_.data() + neuron * dim_;
    return Vec(base, base + dim_);
}

double SomGrid::quantization_error(const std::vector<Vec>& data) const {
    require(!data.empty(), "SomGrid: quantization error over empty data");
    double total = 0.0;
    for (const Vec& x : data) {
        const std::size_t winner = bmu(x);
        total += std::sqrt(
            kernels::sum_sq_diff(codebook_.data() + winner * dim_, x.data(), dim_));
    }
    return total / static_cast<double>(data.size());
}

nlohmann::json SomGrid::to_json() const {
    nlohmann::json j;
    j["rows"] = rows_;
    j["cols"] = cols_;
    j["dim"] = dim_;
    j["t"] = t_;
    j["lr0"] = lr0_;
    j["sigma0"] = sigma0_;
    j["tau"] = tau_;
    nlohmann::json cb = nlohmann::json::array();
    for (double w : codebook_) cb.push_back(to_hex(w));
    j["codebook"] = std::move(cb);
    return j;
}

SomGrid SomGrid::from_json(const nlohmann::json& j) {
    SomGrid som;
    som.rows_ = j.at("rows").get<std::size_t>();
    som.cols_ = j.at("cols").get<std::size_t>();
    som.dim_ = j.at("dim").get<std::size_t>();
    som.t_ = j.at("t").get<std::size_t>();
    som.lr0_ = j.at("lr0").get<double>();
    som.sigma0_ = j.at("sigma0").get<double>();
    som.tau_ = j.at("tau").get<double>();
    for (const auto& w : j.at("codebook")) {
        som.codebook_.push_back(from_hex(w.get<std::string>()));
    }
    if (som.codebook_.size() != som.rows_ * som.cols_ * som.dim_) {
        throw std::runtime_error("SomGrid::from_json: codebook size mismatch");
    }
    return som;
}

bool SomGrid::operator==(const SomGrid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && dim_ == other.dim_ &&
           t_ == other.t_ && lr0_ == other.lr0_ && sigma0_ == other.sigma0_ &&
           tau_ == other.tau_ && codebook_ == other.codebook_;
}

} // namespace pedyn
