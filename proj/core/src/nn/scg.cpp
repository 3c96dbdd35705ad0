// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/nn/scg.hpp"

#include <cmath>
#include <limits>

namespace skidstack::nn {

ScgState scg_init(Eigen::VectorXd beta0, const LossGradFn& fn, const ScgOptions& opts) {
    ScgState s;
    s.beta = std::move(beta0);
    s.loss = fn(s.beta, &s.gradient);
    s.direction = -s.gradient;
    s.lambda = opts.lambda_init;
    s.lambda_bar = 0.0;
    s.success = true;
    s.iteration = 0;
    s.restart_period =
        opts.restart_period > 0 ? opts.restart_period : static_cast<int>(s.beta.size());
    if (s.restart_period < 1) s.restart_period = 1;
    return s;
}

ScgStepInfo scg_step(ScgState& st, const LossGradFn& fn, const ScgOptions& opts) {
    ScgStepInfo info;
    info.loss = st.loss;
    info.gradient_norm = st.gradient.lpNorm<Eigen::Infinity>();
    ++st.iteration;

    const double p_norm2 = st.direction.squaredNorm();
    if (!(p_norm2 > 0.0) || info.gradient_norm == 0.0) {
        // Zero gradient: nothing to do, report as an accepted null step.
        info.accepted = true;
        return info;
    }

    // Second-order information along the direction (only refreshed after an
    // accepted step, as the curvature is unchanged on a rejection).
    if (st.success) {
        const double sigma_k = opts.sigma / std::sqrt(p_norm2);
        Eigen::VectorXd g_probe;
        fn(st.beta + sigma_k * st.direction, &g_probe);
        st.curvature = st.direction.dot(g_probe - st.gradient) / sigma_k;
    }
    double delta = st.curvature;

    // Damping.
    delta += (st.lambda - st.lambda_bar) * p_norm2;
    if (delta <= 0.0) {
        // Make the effective Hessian positive definite.
        st.lambda_bar = 2.0 * (st.lambda - delta / p_norm2);
        delta = -delta + st.lambda * p_norm2;
        st.lambda = st.lambda_bar;
    }

    const double mu = st.direction.dot(-st.gradient);
    const double alpha = mu / delta;

    const Eigen::VectorXd beta_try = st.beta + alpha * st.direction;
    const double loss_try = fn(beta_try, nullptr);

    double comparison;
    if (std::isfinite(loss_try)) {
        comparison = 2.0 * delta * (st.loss - loss_try) / (mu * mu);
    } else {
        comparison = -1.0;  // reject and raise damping
    }

    if (comparison >= 0.0) {
        // Accept: move, refresh gradient, update the conjugate direction.
        const Eigen::VectorXd grad_old = st.gradient;
        st.beta = beta_try;
        st.loss = fn(st.beta, &st.gradient);
        st.lambda_bar = 0.0;
        st.success = true;
        if (st.iteration % st.restart_period == 0) {
            st.direction = -st.gradient;
        } else {
            const double xi =
                (st.gradient.squaredNorm() - st.gradient.dot(grad_old)) / mu;
            st.direction = -st.gradient + xi * st.direction;
        }
        if (comparison >= 0.75) st.lambda *= 0.25;
        info.accepted = true;
    } else {
        st.lambda_bar = st.lambda;
        st.success = false;
        info.accepted = false;
    }
    if (comparison < 0.25) {
        st.lambda += delta * (1.0 - comparison) / p_norm2;
    }
    if (st.lambda > opts.lambda_max) st.lambda = opts.lambda_max;

    info.loss = st.loss;
    info.gradient_norm = st.gradient.lpNorm<Eigen::Infinity>();
    return info;
}

ScgResult scg_minimize(Eigen::VectorXd beta0, const LossGradFn& fn, int max_iterations,
                       double goal_loss, double min_gradient, const ScgOptions& opts) {
    ScgState st = scg_init(std::move(beta0), fn, opts);
    ScgResult out;
    for (int i = 0; i < max_iterations; ++i) {
        const ScgStepInfo info = scg_step(st, fn, opts);
        if ((goal_loss >= 0.0 && info.loss <= goal_loss) ||
            (min_gradient > 0.0 && info.gradient_norm <= min_gradient)) {
            out.converged = true;
            out.iterations = i + 1;
            break;
        }
        out.iterations = i + 1;
    }
    out.beta = st.beta;
    out.loss = st.loss;
    return out;
}

}  // namespace skidstack::nn
