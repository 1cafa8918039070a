#ifndef PEDYN_MONITOR_HPP
#define PEDYN_MONITOR_HPP

#include <cstddef>
#include <deque>
#include <vector>

#include "pedyn/common.hpp"

namespace pedyn {

/// Least-squares slope of values against their positions 0,1,...,n-1.
/// Throws std::invalid_argument when fewer than 2 values are given.
double regression_slope(const Vec& values);

/// Euclidean distance between a goal position and a predicted sensory
/// state; the prediction error fed to the goal buffers.
double prediction_error(const Vec& goal_pos, const Vec& predicted);

struct TrendReport {
    double slope = 0.0;
    bool defined = false;
};

/// Bounded FIFO of non-negative error values. Capacity moves within
/// [cap_min, cap_max]; shrinking below the current length evicts the
/// oldest entries immediately.
class ErrorBuffer {
public:
    ErrorBuffer(std::size_t capacity, std::size_t cap_min, std::size_t cap_max);

    void push(double value);
    void grow();
    void shrink();

    std::size_t size() const { return values_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t cap_min() const { return cap_min_; }
    std::size_t cap_max() const { return cap_max_; }

    /// Contents oldest-first.
    Vec snapshot() const { return Vec(values_.begin(), values_.end()); }

    /// Trend over the contents; undefined below regression_min entries.
    TrendReport trend(std::size_t regression_min) const;

private:
    std::deque<double> values_;
    std::size_t capacity_;
    std::size_t cap_min_;
    std::size_t cap_max_;
};

/// Applies one capacity adjustment to every goal buffer, driven by the
/// sign of the general MSE trend: positive slope grows all buffers by one,
/// negative shrinks by one, zero leaves them unchanged. All goal buffers
/// share one capacity value, so they move in lockstep.
void adjust_capacity(std::vector<ErrorBuffer>& buffers, double mse_slope);

} // namespace pedyn

#endif // PEDYN_MONITOR_HPP
