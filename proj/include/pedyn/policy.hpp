#ifndef PEDYN_POLICY_HPP
#define PEDYN_POLICY_HPP

#include <cstddef>
#include <vector>

#include "pedyn/common.hpp"
#include "pedyn/monitor.hpp"
#include "pedyn/rng.hpp"

namespace pedyn {

/// Goal-selection bookkeeping: which goal is active, for how long, and the
/// thresholds governing when it may be abandoned.
struct GoalSelectionState {
    /// Active goal index; negative before the first selection.
    int current_goal = -1;
    std::size_t iterations_on_goal = 0;
    std::size_t min_hold = 50;
    /// A goal whose error trend is flatter than this is considered
    /// exhausted and dropped.
    double switch_threshold = 1e-4;
    /// Chance per iteration of jumping to a random goal regardless of
    /// trends.
    double greedy_goal_prob = 0.01;
};

enum class NoiseMode { fixed, adaptive };

/// Exploration noise regulation. Fixed mode always returns sigma_fixed;
/// adaptive mode maps the general MSE trend through an affine ramp, so a
/// rising error curve widens exploration and a falling one narrows it.
struct NoisePolicy {
    NoiseMode mode = NoiseMode::adaptive;
    double sigma_fixed = 0.05;
    double sigma_min = 0.01;
    double sigma_max = 0.30;
    double gain = 1.0;
    /// MSE-slope magnitude that drives the ramp across half its range.
    double slope_ref = 0.005;
};

/// Whether to abandon the current goal this iteration. Checks, in order:
/// the greedy-goal draw (always consumes one uniform), the minimum hold
/// time, trend availability, and finally the trend itself: switch when the
/// error is rising (slope > 0) or has flattened out (|slope| below the
/// threshold).
bool should_switch(const GoalSelectionState& state, const TrendReport& trend, RngStream& rng);

/// Picks the goal with the steepest descending error trend. Goals without
/// a defined trend count as slope 0; exact ties are broken uniformly at
/// random, which also covers the cold start where nothing has a trend yet.
std::size_t select_goal(const std::vector<TrendReport>& trends, RngStream& rng);

/// Standard deviation of the exploration noise for the current MSE trend.
/// An undefined trend counts as slope 0.
double exploration_sigma(const NoisePolicy& policy, const TrendReport& mse_trend);

/// Perturbs a motor command for exploration: with probability
/// greedy_move_prob the command is replaced by a uniform random one,
/// otherwise zero-mean Gaussian noise of the given sigma is added per
/// component. Result is clamped to [0,1]^2 either way.
MotorCommand apply_noise(MotorCommand cmd, double sigma, double greedy_move_prob, RngStream& rng);

} // namespace pedyn

#endif // PEDYN_POLICY_HPP
