#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pedyn/nnet.hpp"
#include "pedyn/rng.hpp"

using pedyn::Activation;
using pedyn::AdaDeltaParams;
using pedyn::LayerSpec;
using pedyn::Network;
using pedyn::RngStream;
using pedyn::Vec;

TEST_CASE("mse_loss averages squared component errors") {
    CHECK(pedyn::mse_loss({1.0, 2.0}, {0.0, 0.0}) == doctest::Approx(2.5));
    CHECK(pedyn::mse_loss({1.0}, {1.0}) == 0.0);
    CHECK_THROWS_AS(pedyn::mse_loss({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("construction draws weights within the fan-based bound and zero biases") {
    Network net({{5, Activation::relu, 0.0}, {2, Activation::linear, 0.0}}, 3, 7);
    CHECK(net.input_dim() == 3);
    CHECK(net.output_dim() == 2);
    CHECK(net.layer_count() == 2);

    const double limit0 = std::sqrt(6.0 / (3 + 5));
    for (double w : net.weights(0)) {
        CHECK(std::fabs(w) <= limit0);
    }
    const double limit1 = std::sqrt(6.0 / (5 + 2));
    for (double w : net.weights(1)) {
        CHECK(std::fabs(w) <= limit1);
    }
    for (double b : net.biases(0)) CHECK(b == 0.0);
    for (double b : net.biases(1)) CHECK(b == 0.0);
}

TEST_CASE("same seed builds identical networks") {
    Network a({{4, Activation::sigmoid, 0.0}}, 2, 123);
    Network b({{4, Activation::sigmoid, 0.0}}, 2, 123);
    Network c({{4, Activation::sigmoid, 0.0}}, 2, 124);
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("forward matches a hand-computed single layer") {
    Network net({{1, Activation::linear, 0.0}}, 1, 1);
    net.weight(0, 0) = 2.0;
    net.bias(0, 0) = 0.5;
    CHECK(net.forward({3.0})[0] == 6.5);

    Network sig({{1, Activation::sigmoid, 0.0}}, 1, 1);
    sig.weight(0, 0) = 0.0;
    sig.bias(0, 0) = 0.0;
    CHECK(sig.forward({9.0})[0] == 0.5);

    Network relu({{2, Activation::relu, 0.0}}, 1, 1);
    relu.weight(0, 0) = 1.0;
    relu.weight(0, 1) = -1.0;
    relu.bias(0, 0) = 0.0;
    relu.bias(0, 1) = 0.0;
    const Vec out = relu.forward({2.0});
    CHECK(out[0] == 2.0);
    CHECK(out[1] == 0.0);
}

TEST_CASE("forward matches a hand-computed two layer stack") {
    // x -> [w=1, w=2 relu] -> [1 1] linear + 0.5
    Network net({{2, Activation::relu, 0.0}, {1, Activation::linear, 0.0}}, 1, 1);
    net.weight(0, 0) = 1.0;
    net.weight(0, 1) = 2.0;
    net.weight(1, 0) = 1.0;
    net.weight(1, 1) = 1.0;
    net.bias(1, 0) = 0.5;
    CHECK(net.forward({1.5})[0] == doctest::Approx(1.5 + 3.0 + 0.5).epsilon(1e-15));
    CHECK(net.forward({-1.0})[0] == 0.5);
    CHECK_THROWS_AS(net.forward({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("analytic gradients match central finite differences") {
    RngStream rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t in_dim = 2 + rng.index(4);
        const std::size_t hidden = 2 + rng.index(5);
        const std::size_t out_dim = 1 + rng.index(3);
        const Activation hidden_act =
            trial % 2 == 0 ? Activation::relu : Activation::sigmoid;
        const Activation out_act =
            trial % 3 == 0 ? Activation::linear : Activation::sigmoid;
        Network net({{hidden, hidden_act, 0.0}, {out_dim, out_act, 0.0}}, in_dim,
                    rng.next_raw());

        const std::size_t batch = 1 + rng.index(4);
        std::vector<Vec> inputs, targets;
        for (std::size_t i = 0; i < batch; ++i) {
            Vec x(in_dim), y(out_dim);
            for (double& v : x) v = rng.uniform(-1.0, 1.0);
            for (double& v : y) v = rng.uniform(0.0, 1.0);
            inputs.push_back(x);
            targets.push_back(y);
        }
        const double err = oracles::gradcheck_max_rel_error(net, inputs, targets, 1e-5);
        CHECK(err < 1e-4);
    }
}

TEST_CASE("a dropout network still gradchecks in evaluation mode") {
    RngStream rng(55);
    Network net({{6, Activation::relu, 0.5}, {2, Activation::linear, 0.0}}, 3, 77);
    std::vector<Vec> inputs, targets;
    for (int i = 0; i < 3; ++i) {
        Vec x(3), y(2);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        for (double& v : y) v = rng.uniform(-1.0, 1.0);
        inputs.push_back(x);
        targets.push_back(y);
    }
    CHECK(oracles::gradcheck_max_rel_error(net, inputs, targets, 1e-5) < 1e-4);
}

TEST_CASE("one train_batch step applies the expected AdaDelta update") {
    // Single linear unit, one sample: loss = (w*x + b - t)^2, so the
    // weight gradient is 2*(w*x + b - t)*x and the bias gradient drops
    // the x factor.
    Network net({{1, Activation::linear, 0.0}}, 1, 3);
    const double w0 = net.weights(0)[0];
    const double x = 0.8;
    const double t = 0.3;
    const double gw = 2.0 * (w0 * x - t) * x;
    const double gb = 2.0 * (w0 * x - t);

    AdaDeltaParams params;
    RngStream rng(1);
    const double loss = net.train_batch({{x}}, {{t}}, params, rng);
    CHECK(loss == doctest::Approx((w0 * x - t) * (w0 * x - t)).epsilon(1e-12));

    auto expected_step = [&](double g) {
        const double eg2 = (1.0 - params.rho) * g * g;
        return -std::sqrt(params.epsilon) / std::sqrt(eg2 + params.epsilon) * g;
    };
    CHECK(net.weights(0)[0] == doctest::Approx(w0 + expected_step(gw)).epsilon(1e-12));
    CHECK(net.biases(0)[0] == doctest::Approx(expected_step(gb)).epsilon(1e-12));
}

TEST_CASE("training shrinks the loss on a small regression task") {
    RngStream data_rng(9);
    std::vector<Vec> inputs, targets;
    for (int i = 0; i < 32; ++i) {
        const double x = data_rng.uniform(-1.0, 1.0);
        inputs.push_back({x});
        targets.push_back({0.5 * x + 0.2});
    }
    Network net({{8, Activation::relu, 0.0}, {1, Activation::linear, 0.0}}, 1, 21);
    AdaDeltaParams params;
    RngStream rng(4);
    const double before = net.batch_loss(inputs, targets);
    for (int epoch = 0; epoch < 300; ++epoch) {
        net.train_batch(inputs, targets, params, rng);
    }
    const double after = net.batch_loss(inputs, targets);
    CHECK(after < before);
    CHECK(after < 0.01);
}

TEST_CASE("training with dropout is deterministic given the seed") {
    std::vector<Vec> inputs = {{0.1, 0.9}, {0.4, 0.2}, {0.8, 0.5}};
    std::vector<Vec> targets = {{0.0}, {1.0}, {0.5}};
    AdaDeltaParams params;

    Network a({{8, Activation::relu, 0.3}, {1, Activation::sigmoid, 0.0}}, 2, 5);
    Network b = a;
    RngStream ra(77);
    RngStream rb(77);
    for (int i = 0; i < 20; ++i) {
        const double la = a.train_batch(inputs, targets, params, ra);
        const double lb = b.train_batch(inputs, targets, params, rb);
        CHECK(la == lb);
    }
    CHECK(a == b);
}

TEST_CASE("slice splits a network without changing its function") {
    Network full({{6, Activation::relu, 0.0},
                  {3, Activation::sigmoid, 0.0},
                  {6, Activation::relu, 0.0},
                  {4, Activation::sigmoid, 0.0}},
                 4, 31);
    const Network front = full.slice(0, 2);
    const Network back = full.slice(2, 2);
    CHECK(front.input_dim() == 4);
    CHECK(front.output_dim() == 3);
    CHECK(back.input_dim() == 3);
    CHECK(back.output_dim() == 4);

    const Vec x = {0.1, -0.4, 0.9, 0.3};
    const Vec direct = full.forward(x);
    const Vec staged = back.forward(front.forward(x));
    REQUIRE(direct.size() == staged.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(direct[i] == staged[i]);
    }

    CHECK_THROWS_AS(full.slice(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(full.slice(0, 0), std::invalid_argument);
}

TEST_CASE("json round trip preserves parameters and optimizer state") {
    Network net({{5, Activation::relu, 0.2}, {2, Activation::sigmoid, 0.0}}, 3, 13);
    AdaDeltaParams params;
    RngStream rng(8);
    std::vector<Vec> inputs = {{0.3, 0.1, 0.7}, {0.9, 0.4, 0.2}};
    std::vector<Vec> targets = {{0.2, 0.8}, {0.6, 0.1}};
    for (int i = 0; i < 5; ++i) {
        net.train_batch(inputs, targets, params, rng);
    }

    const Network restored = Network::from_json(net.to_json());
    CHECK(restored == net);

    // Training both copies further from the same stream keeps them equal,
    // which only holds if the optimizer state round-tripped exactly.
    Network original = net;
    Network copy = restored;
    RngStream ra(3);
    RngStream rb(3);
    original.train_batch(inputs, targets, params, ra);
    copy.train_batch(inputs, targets, params, rb);
    CHECK(original == copy);
}

TEST_CASE("construction rejects bad shapes") {
    CHECK_THROWS_AS(Network({}, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(Network({{0, Activation::relu, 0.0}}, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(Network({{2, Activation::relu, 1.0}}, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(Network({{2, Activation::relu, 0.0}}, 0, 1), std::invalid_argument);
}

TEST_CASE("batch calls reject mismatched inputs") {
    Network net({{2, Activation::linear, 0.0}}, 2, 1);
    AdaDeltaParams params;
    RngStream rng(1);
    CHECK_THROWS_AS(net.train_batch({}, {}, params, rng), std::invalid_argument);
    CHECK_THROWS_AS(net.train_batch({{1.0, 2.0}}, {}, params, rng), std::invalid_argument);
    CHECK_THROWS_AS(net.batch_loss({{1.0, 2.0}}, {{1.0}}), std::invalid_argument);
}
