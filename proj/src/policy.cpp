#include "pedyn/policy.hpp"

#include <cmath>

namespace pedyn {

bool should_switch(const GoalSelectionState& state, const TrendReport& trend, RngStream& rng) {
    if (rng.uniform() < state.greedy_goal_prob) {
        return true;
    }
    if (state.iterations_on_goal < state.min_hold) {
        return false;
    }
    if (!trend.defined) {
        return false;
    }
    return trend.slope > 0.0 || std::fabs(trend.slope) < state.switch_threshold;
}

std::size_t select_goal(const std::vector<TrendReport>& trends, RngStream& rng) {
    require(!trends.empty(), "select_goal: no goals");
    std::vector<std::size_t> best;
    double best_slope = 0.0;
    for (std::size_t i = 0; i < trends.size(); ++i) {
        const double slope = trends[i].defined ? trends[i].slope : 0.0;
        if (best.empty() || slope < best_slope) {
            best.assign(1, i);
            best_slope = slope;
        } else if (slope == best_slope) {
            best.push_back(i);
        }
    }
    if (best.size() == 1) {
        return best.front();
    }
    return best[rng.index(best.size())];
}

double exploration_sigma(const NoisePolicy& policy, const TrendReport& mse_trend) {
    require(policy.sigma_min > 0.0 && policy.sigma_min <= policy.sigma_fixed &&
                policy.sigma_fixed <= policy.sigma_max,
            "NoisePolicy: need 0 < sigma_min <= sigma_fixed <= sigma_max");
    require(policy.gain > 0.0 && policy.slope_ref > 0.0,
            "NoisePolicy: gain and slope_ref must be positive");
    if (policy.mode == NoiseMode::fixed) {
        return policy.sigma_fixed;
    }
    const double slope = mse_trend.defined ? mse_trend.slope : 0.0;
    const double ramp = clamp01(0.5 + policy.gain * slope / policy.slope_ref);
    const double sigma = policy.sigma_min + (policy.sigma_max - policy.sigma_min) * ramp;
    if (sigma < policy.sigma_min) return policy.sigma_min;
    if (sigma > policy.sigma_max) return policy.sigma_max;
    return sigma;
}

MotorCommand apply_noise(MotorCommand cmd, double sigma, double greedy_move_prob,
                         RngStream& rng) {
    if (rng.uniform() < greedy_move_prob) {
        return {rng.uniform(), rng.uniform()};
    }
    cmd.x += rng.normal(0.0, sigma);
    cmd.y += rng.normal(0.0, sigma);
    return clamp01(cmd);
}

} // namespace pedyn
