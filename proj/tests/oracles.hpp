#ifndef PEDYN_TESTS_ORACLES_HPP
#define PEDYN_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "pedyn/nnet.hpp"

// Independent reference implementations the tests compare the library
// against. Each is written from the defining formula, not by calling back
// into the code under test.

namespace oracles {

/// Least-squares slope over (0,v0), (1,v1), ... via the raw-sum normal
/// equations: (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2), accumulated in extended
/// precision. Different algebraic form than the library's centered
/// two-pass computation.
inline double ols_slope(const std::vector<double>& values) {
    const std::size_t n = values.size();
    long double sx = 0.0L, sy = 0.0L, sxy = 0.0L, sxx = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double x = static_cast<long double>(i);
        const long double y = values[i];
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
    }
    const long double nn = static_cast<long double>(n);
    return static_cast<double>((nn * sxy - sx * sy) / (nn * sxx - sx * sx));
}

/// One AdaDelta trajectory over a scripted gradient sequence, tracked in
/// extended precision from the published recurrences. Returns the
/// parameter value after every step.
inline std::vector<double> adadelta_trajectory(double theta0,
                                               const std::vector<double>& gradients,
                                               double rho, double eps) {
    long double theta = theta0;
    long double eg2 = 0.0L;
    long double ed2 = 0.0L;
    std::vector<double> out;
    out.reserve(gradients.size());
    for (double g : gradients) {
        const long double lg = g;
        eg2 = rho * eg2 + (1.0L - rho) * lg * lg;
        const long double delta = -std::sqrt(ed2 + static_cast<long double>(eps)) /
                                  std::sqrt(eg2 + static_cast<long double>(eps)) * lg;
        ed2 = rho * ed2 + (1.0L - rho) * delta * delta;
        theta += delta;
        out.push_back(static_cast<double>(theta));
    }
    return out;
}

/// Largest relative mismatch between a network's analytic batch gradients
/// and central finite differences with step h over every parameter.
inline double gradcheck_max_rel_error(pedyn::Network& net,
                                      const std::vector<pedyn::Vec>& inputs,
                                      const std::vector<pedyn::Vec>& targets, double h) {
    std::vector<pedyn::Vec> grad_w, grad_b;
    net.batch_gradients(inputs, targets, grad_w, grad_b);

    double worst = 0.0;
    auto probe = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + h;
        const double up = net.batch_loss(inputs, targets);
        param = saved - h;
        const double down = net.batch_loss(inputs, targets);
        param = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double scale = std::max({std::fabs(analytic), std::fabs(numeric), 1e-8});
        worst = std::max(worst, std::fabs(analytic - numeric) / scale);
    };
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        for (std::size_t k = 0; k < grad_w[l].size(); ++k) {
            probe(net.weight(l, k), grad_w[l][k]);
        }
        for (std::size_t k = 0; k < grad_b[l].size(); ++k) {
            probe(net.bias(l, k), grad_b[l][k]);
        }
    }
    return worst;
}

/// Pearson chi-squared statistic of observed counts against a uniform
/// expectation.
inline double chi_squared_uniform(const std::vector<std::size_t>& counts, double total) {
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

/// Upper critical value of the chi-squared distribution via the
/// Wilson-Hilferty cube approximation; z is the standard-normal quantile
/// of the desired upper tail (3.090232 for p = 0.001).
inline double chi_squared_critical(std::size_t dof, double z) {
    const double k = static_cast<double>(dof);
    const double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * term * term * term;
}

struct CountBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// Three-sigma band around the expected count of a binomial(n, p).
inline CountBounds binomial_3sigma(std::size_t n, double p) {
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return {mean - 3.0 * sd, mean + 3.0 * sd};
}

} // namespace oracles

#endif // PEDYN_TESTS_ORACLES_HPP
