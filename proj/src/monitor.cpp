#include "pedyn/monitor.hpp"

#include <cmath>

#include "pedyn/kernels.hpp"

namespace pedyn {

double regression_slope(const Vec& values) {
    const std::size_t n = values.size();
    require(n >= 2, "regression_slope: need at least 2 values");
    // Centered two-pass form, accumulated in extended precision so the
    // slope survives heavy cancellation when the data is nearly flat.
    const long double x_mean = static_cast<long double>(n - 1) / 2.0L;
    long double v_mean = 0.0L;
    for (double v : values) v_mean += v;
    v_mean /= static_cast<long double>(n);
    long double sxy = 0.0L;
    long double sxx = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dx = static_cast<long double>(i) - x_mean;
        sxy += dx * (static_cast<long double>(values[i]) - v_mean);
        sxx += dx * dx;
    }
    return static_cast<double>(sxy / sxx);
}

double prediction_error(const Vec& goal_pos, const Vec& predicted) {
    require(goal_pos.size() == predicted.size(), "prediction_error: length mismatch");
    return std::sqrt(kernels::sum_sq_diff(goal_pos.data(), predicted.data(), goal_pos.size()));
}

ErrorBuffer::ErrorBuffer(std::size_t capacity, std::size_t cap_min, std::size_t cap_max)
    : capacity_(capacity), cap_min_(cap_min), cap_max_(cap_max) {
    require(cap_min >= 1, "ErrorBuffer: cap_min must be at least 1");
    require(cap_min <= cap_max, "ErrorBuffer: cap_min must not exceed cap_max");
    require(capacity >= cap_min && capacity <= cap_max,
            "ErrorBuffer: capacity outside [cap_min, cap_max]");
}

void ErrorBuffer::push(double value) {
    require(std::isfinite(value) && value >= 0.0,
            "ErrorBuffer: value must be finite and non-negative");
    values_.push_back(value);
    while (values_.size() > capacity_) {
        values_.pop_front();
    }
}

void ErrorBuffer::grow() {
    if (capacity_ < cap_max_) {
        ++capacity_;
    }
}

void ErrorBuffer::shrink() {
    if (capacity_ > cap_min_) {
        --capacity_;
    }
    while (values_.size() > capacity_) {
        values_.pop_front();
    }
}

TrendReport ErrorBuffer::trend(std::size_t regression_min) const {
    if (values_.size() < regression_min || values_.size() < 2) {
        return {0.0, false};
    }
    return {regression_slope(snapshot()), true};
}

void adjust_capacity(std::vector<ErrorBuffer>& buffers, double mse_slope) {
    if (mse_slope > 0.0) {
        for (ErrorBuffer& buf : buffers) buf.grow();
    } else if (mse_slope < 0.0) {
        for (ErrorBuffer& buf : buffers) buf.shrink();
    }
}

} // namespace pedyn
