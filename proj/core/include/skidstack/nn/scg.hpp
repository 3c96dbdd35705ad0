// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Scaled conjugate gradient: line-search-free conjugate directions with a
// curvature estimate from a directional finite difference and adaptive
// damping. Accepted steps never increase the loss; the direction restarts
// to steepest descent every parameter-count iterations.

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace skidstack::nn {

/// Evaluates the objective at beta; fills *grad when non-null. Must be
/// deterministic for reproducible training.
using LossGradFn = std::function<double(const Eigen::VectorXd& beta, Eigen::VectorXd* grad)>;

struct ScgOptions {
    double sigma = 5e-5;        ///< curvature probe scale
    double lambda_init = 5e-7;  ///< initial damping
    double lambda_max = 1e15;   ///< damping ceiling; beyond it the step stalls
    int restart_period = 0;     ///< 0 = parameter count
};

struct ScgState {
    Eigen::VectorXd beta;       ///< current parameters
    Eigen::VectorXd gradient;   ///< gradient at beta
    Eigen::VectorXd direction;  ///< conjugate search direction p
    double loss = 0.0;
    double lambda = 5e-7;
    double lambda_bar = 0.0;
    double curvature = 0.0;     ///< p' H p estimate from the last probe
    bool success = true;        ///< last step accepted (fresh curvature needed)
    int iteration = 0;
    int restart_period = 1;
};

/// Evaluates loss and gradient at beta0 and primes the first direction.
ScgState scg_init(Eigen::VectorXd beta0, const LossGradFn& fn,
                  const ScgOptions& opts = {});

struct ScgStepInfo {
    bool accepted = false;
    double loss = 0.0;        ///< loss after the step (unchanged when rejected)
    double gradient_norm = 0.0;  ///< infinity norm at the current point
};

/// One SCG iteration. A rejected step leaves beta unchanged and raises the
/// damping; a non-finite trial loss is treated as a rejection.
ScgStepInfo scg_step(ScgState& state, const LossGradFn& fn, const ScgOptions& opts = {});

struct ScgResult {
    Eigen::VectorXd beta;
    double loss = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Iterates until the loss goal, the gradient floor or the iteration cap.
ScgResult scg_minimize(Eigen::VectorXd beta0, const LossGradFn& fn, int max_iterations,
                       double goal_loss = -1.0, double min_gradient = 0.0,
                       const ScgOptions& opts = {});

}  // namespace skidstack::nn
