#ifndef PEDYN_SOM_HPP
#define PEDYN_SOM_HPP

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "pedyn/common.hpp"

namespace pedyn {

/// Kohonen self-organizing map on a rectangular grid. Neuron positions in
/// sensory space double as the goal set: goal i is the codebook vector of
/// neuron i (row-major neuron order).
class SomGrid {
public:
    SomGrid(std::size_t rows, std::size_t cols, std::size_t dim, std::uint64_t seed,
            double lr0 = 0.5, double sigma0 = 1.0, double tau = 2000.0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return dim_; }
    std::size_t neuron_count() const { return rows_ * cols_; }
    std::size_t steps() const { return t_; }

    /// Learning rate and neighborhood radius for the upcoming step; both
    /// decay exponentially with the number of steps taken so far.
    double learning_rate() const;
    double neighborhood_sigma() const;

    /// Index of the codebook vector nearest to x (Euclidean); ties go to
    /// the lowest index.
    std::size_t bmu(const Vec& x) const;

    /// One Kohonen update: every neuron is pulled toward x with strength
    /// lr(t) * exp(-grid_dist(i, bmu)^2 / (2 sigma(t)^2)).
    void train_step(const Vec& x);

    /// Snapshot of all codebook vectors in neuron order.
    std::vector<Vec> goal_positions() const;

    /// Codebook vector of one neuron.
    Vec position(std::size_t neuron) const;

    /// Mean distance from each datum to its best-matching neuron.
    double quantization_error(const std::vector<Vec>& data) const;

    nlohmann::json to_json() const;
    static SomGrid from_json(const nlohmann::json& j);

    bool operator==(const SomGrid& other) const;

private:
    SomGrid() = default;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t dim_ = 0;
    std::size_t t_ = 0;
    double lr0_ = 0.5;
    double sigma0_ = 1.0;
    double tau_ = 2000.0;
    Vec codebook_;  // rows*cols*dim, neuron-major
};

} // namespace pedyn

#endif // PEDYN_SOM_HPP
