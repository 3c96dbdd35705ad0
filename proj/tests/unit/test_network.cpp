// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "skidstack/nn/network.hpp"
#include "skidstack/rng.hpp"

using namespace skidstack;
using namespace skidstack::nn;

TEST_CASE("minmax map round-trips and handles the degenerate range") {
    MinMaxMap m{-0.4, 0.4};
    for (double x : {-0.4, -0.123, 0.0, 0.321, 0.4}) {
        CHECK(m.denormalize(m.normalize(x)) == doctest::Approx(x).epsilon(1e-15));
    }
    CHECK(m.normalize(-0.4) == doctest::Approx(-1.0));
    CHECK(m.normalize(0.4) == doctest::Approx(1.0));

    MinMaxMap deg{2.0, 2.0};
    CHECK(deg.degenerate());
    CHECK(deg.normalize(2.0) == 0.0);
    CHECK(deg.denormalize(0.0) == doctest::Approx(2.0));
}

TEST_CASE("all-zero network outputs zero") {
    auto model = NetworkModel::create({1, 4, 3, 1}, 1);
    Eigen::VectorXd zeros = Eigen::VectorXd::Zero(model.parameter_count());
    model.set_parameters(zeros);
    CHECK(model.forward(0.37) == doctest::Approx(0.0));
    CHECK(model.forward(-2.0) == doctest::Approx(0.0));
}

TEST_CASE("single hidden unit matches the hand-computed cascade") {
    auto model = NetworkModel::create({1, 1, 1}, 1);
    // W1 = 2, b1 = 0.5, W2 = 3, b2 = -1, identity normalization.
    Eigen::VectorXd beta(4);
    beta << 2.0, 0.5, 3.0, -1.0;
    model.set_parameters(beta);
    const double v = 0.3;
    CHECK(model.forward(v) == doctest::Approx(3.0 * std::tanh(2.0 * v + 0.5) - 1.0));
}

TEST_CASE("forward is deterministic") {
    auto model = NetworkModel::create({1, 16, 8, 1}, 77);
    const double a = model.forward(0.123);
    const double b = model.forward(0.123);
    CHECK(a == b);
}

TEST_CASE("parameter pack/unpack round-trips") {
    auto model = NetworkModel::create({1, 5, 3, 1}, 3);
    const Eigen::VectorXd beta = model.parameters();
    auto clone = NetworkModel::create({1, 5, 3, 1}, 99);
    clone.set_parameters(beta);
    CHECK((clone.parameters() - beta).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(clone.forward(0.2) == model.forward(0.2));
}

TEST_CASE("output-layer error term is -2 (u - u_hat)") {
    auto model = NetworkModel::create({1, 2, 1}, 5);
    Eigen::RowVectorXd x(1), y(1);
    x << 0.4;
    y << 0.9;
    // For a single sample, dJ/d(b_out) = (1/N) * delta_out = -2 (u - u_hat).
    Eigen::VectorXd grad;
    const double loss = batch_loss_and_gradient(model, x, y, &grad);
    const double u_hat = model.forward_norm(x)(0);
    CHECK(loss == doctest::Approx((0.9 - u_hat) * (0.9 - u_hat)));
    const double db_out = grad(grad.size() - 1);  // last parameter = output bias
    CHECK(db_out == doctest::Approx(-2.0 * (0.9 - u_hat)).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        auto model = NetworkModel::create({1, 6, 4, 1}, 100 + trial);
        const int n = 7;
        Eigen::RowVectorXd x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x(i) = rng.uniform(-1, 1);
            y(i) = rng.uniform(-1, 1);
        }
        Eigen::VectorXd grad;
        batch_loss_and_gradient(model, x, y, &grad);

        Eigen::VectorXd beta = model.parameters();
        auto probe = model;
        const double h = 1e-6;
        for (int k = 0; k < beta.size(); ++k) {
            Eigen::VectorXd bp = beta, bm = beta;
            bp(k) += h;
            bm(k) -= h;
            probe.set_parameters(bp);
            const double jp = batch_loss_and_gradient(probe, x, y, nullptr);
            probe.set_parameters(bm);
            const double jm = batch_loss_and_gradient(probe, x, y, nullptr);
            const double fd = (jp - jm) / (2 * h);
            const double scale = std::max({1.0, std::abs(fd), std::abs(grad(k))});
            CHECK(std::abs(grad(k) - fd) / scale < 1e-6);
        }
    }
}

TEST_CASE("perfect-fit batch gives zero loss and zero gradient") {
    auto model = NetworkModel::create({1, 4, 1}, 21);
    Eigen::RowVectorXd x(5);
    x << -0.8, -0.3, 0.0, 0.4, 0.9;
    const Eigen::RowVectorXd y = model.forward_norm(x);
    Eigen::VectorXd grad;
    const double loss = batch_loss_and_gradient(model, x, y, &grad);
    CHECK(loss == doctest::Approx(0.0));
    CHECK(grad.lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
}

TEST_CASE("empty batch is a contract violation") {
    auto model = NetworkModel::create({1, 2, 1}, 1);
    Eigen::RowVectorXd x(0), y(0);
    CHECK_THROWS_AS(batch_loss_and_gradient(model, x, y, nullptr), std::invalid_argument);
}

TEST_CASE("model file round-trips through JSON with hash check") {
    namespace fs = std::filesystem;
    auto model = NetworkModel::create({1, 8, 5, 1}, 4);
    model.input_map = {-0.4, 0.4};
    model.output_map = {-45.0, 45.0};
    const auto path = (fs::temp_directory_path() / "skidstack_model_rt.json").string();
    model.save(path);
    const auto back = NetworkModel::load(path);
    CHECK(back.layer_sizes() == model.layer_sizes());
    for (double v : {-0.35, -0.1, 0.0, 0.2, 0.39}) {
        CHECK(back.forward(v) == model.forward(v));
    }
    fs::remove(path);
}
