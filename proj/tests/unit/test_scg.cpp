// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <doctest.h>

#include <cmath>

#include "skidstack/nn/scg.hpp"
#include "skidstack/rng.hpp"

using namespace skidstack;
using namespace skidstack::nn;

namespace {

/// Convex quadratic 0.5 (x - x*)' H (x - x*) with SPD H and optimum loss 0.
struct Quadratic {
    Eigen::MatrixXd h;
    Eigen::VectorXd x_star;

    static Quadratic random(int dim, std::uint64_t seed) {
        Rng rng(seed);
        Eigen::MatrixXd m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) m(r, c) = rng.uniform(-1, 1);
        }
        Quadratic q;
        q.h = m.transpose() * m + 0.5 * Eigen::MatrixXd::Identity(dim, dim);
        q.x_star = Eigen::VectorXd(dim);
        for (int r = 0; r < dim; ++r) q.x_star(r) = rng.uniform(-2, 2);
        return q;
    }

    [[nodiscard]] const Eigen::VectorXd& minimizer() const { return x_star; }

    [[nodiscard]] LossGradFn fn() const {
        return [this](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
            const Eigen::VectorXd d = x - x_star;
            if (grad) *grad = h * d;
            return 0.5 * d.dot(h * d);
        };
    }
};

}  // namespace

TEST_CASE("scg converges on a 2-D convex quadratic") {
    const auto q = Quadratic::random(2, 17);
    ScgResult res = scg_minimize(Eigen::VectorXd::Zero(2), q.fn(), 50, -1e18, 1e-12);
    CHECK((res.beta - q.minimizer()).norm() < 1e-8);
}

TEST_CASE("scg converges on a 10-D convex quadratic within 200 iterations") {
    const auto q = Quadratic::random(10, 23);
    const auto fn = q.fn();
    ScgState st = scg_init(Eigen::VectorXd::Zero(10), fn);
    double prev_loss = st.loss;
    int iterations = 0;
    for (; iterations < 200; ++iterations) {
        const auto info = scg_step(st, fn);
        if (info.accepted) {
            CHECK(info.loss <= prev_loss + 1e-15);  // monotone on accepted steps
            prev_loss = info.loss;
        }
        if ((st.beta - q.minimizer()).norm() < 1e-8) break;
    }
    CHECK(iterations < 200);
    CHECK((st.beta - q.minimizer()).norm() < 1e-8);
}

TEST_CASE("zero gradient is an accepted null step") {
    const auto q = Quadratic::random(4, 5);
    const Eigen::VectorXd xstar = q.minimizer();
    const auto fn = q.fn();
    ScgState st = scg_init(xstar, fn);
    const auto info = scg_step(st, fn);
    CHECK(info.accepted);
    CHECK((st.beta - xstar).norm() < 1e-12);
}

TEST_CASE("first step from steepest descent matches the exact line search") {
    const auto q = Quadratic::random(6, 31);
    const auto fn = q.fn();
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(6);
    ScgState st = scg_init(x0, fn);
    const Eigen::VectorXd g = q.h * (x0 - q.x_star);
    const double alpha_exact = g.squaredNorm() / g.dot(q.h * g);
    scg_step(st, fn);
    const Eigen::VectorXd expected = x0 - alpha_exact * g;
    // The damping lambda_init = 5e-7 perturbs the step only marginally.
    CHECK((st.beta - expected).norm() < 1e-4 * expected.norm());
}

TEST_CASE("scg never accepts an uphill step on a nasty nonconvex function") {
    // Rosenbrock-style valley in 2-D.
    const LossGradFn fn = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        const double a = 1.0 - x(0);
        const double b = x(1) - x(0) * x(0);
        if (grad) {
            grad->resize(2);
            (*grad)(0) = -2 * a - 400 * x(0) * b;
            (*grad)(1) = 200 * b;
        }
        return a * a + 100 * b * b;
    };
    ScgState st = scg_init((Eigen::VectorXd(2) << -1.2, 1.0).finished(), fn);
    double prev = st.loss;
    for (int i = 0; i < 500; ++i) {
        const auto info = scg_step(st, fn);
        if (info.accepted) {
            CHECK(info.loss <= prev + 1e-15);
            prev = info.loss;
        }
    }
    CHECK(st.loss < 1e-3);  // well into the valley
}

TEST_CASE("non-finite trial losses are rejected and damped") {
    // Objective blows up away from the origin; SCG must survive.
    const LossGradFn fn = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        if (x.lpNorm<Eigen::Infinity>() > 10.0) {
            if (grad) *grad = Eigen::VectorXd::Constant(x.size(), std::nan(""));
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (grad) *grad = 2.0 * x;
        return x.squaredNorm();
    };
    ScgState st = scg_init((Eigen::VectorXd(2) << 9.0, 9.0).finished(), fn);
    for (int i = 0; i < 100; ++i) scg_step(st, fn);
    CHECK(std::isfinite(st.loss));
    CHECK(st.loss < 1.0);
}
