// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Task reward (step cost, distance progress, timeout shaping) and the
// twelve-term shaping reward over one continuous transition. The distance
// and heading progress terms together telescope the potential
// Phi(d, e) = k_d * d + k_theta * |e|.

#pragma once

#include <cmath>

#include "skidstack/geometry.hpp"

namespace skidstack::rl {

struct RewardWeights {
    double k_d = 5.0;
    double k_theta = 6.0;
    double k_v = 0.08;
    double k_lat = 0.9;
    double k_omega = 0.28;
    double k_av = 0.10;
    double k_aomega = 0.10;
    double k_step = 0.04;
    double k_timeout = 3.0;
    double k_ws = 1.2;         ///< hysteresis spin penalty gain
    double k_wflip = 0.85;
    double k_head_inc = 0.25;
    double k_head_stall = 0.03;
    double delta_e_head = 0.02;  ///< stall window as a |de|/dt rate, rad/s
    double k_wstop = 1.5;
    double e_pad = 0.01;       ///< rad
    double k_wsign = 0.8;
    // Deadbands and lock windows shared by the reward and the policy shaping.
    double e_db = 0.01;        ///< rad
    double omega_db = 0.001;   ///< rad/s
    double e_lock = 0.03;      ///< rad
    double d_lock = 0.30;      ///< m
};

enum class TerminalCause { none, goal, timeout, out_of_workspace };

[[nodiscard]] const char* to_string(TerminalCause cause);

/// k_d * (d_t - d_{t+1}); one half of the telescoping potential.
[[nodiscard]] inline double distance_progress(double d_t, double d_next,
                                              const RewardWeights& w) {
    return w.k_d * (d_t - d_next);
}

/// k_theta * (|e_t| - |e_{t+1}|); the other half.
[[nodiscard]] inline double heading_progress(double e_t, double e_next,
                                             const RewardWeights& w) {
    return w.k_theta * (std::abs(e_t) - std::abs(e_next));
}

/// Phi(d, e) = k_d * d + k_theta * |e|.
[[nodiscard]] inline double potential(double d, double e, const RewardWeights& w) {
    return w.k_d * d + w.k_theta * std::abs(e);
}

/// Step cost + distance progress + timeout shaping. d_terminal is the final
/// distance to the goal and only contributes on timeout termination.
[[nodiscard]] inline double task_reward(double d_t, double d_next, TerminalCause cause,
                                        double d_terminal, const RewardWeights& w) {
    double r = -w.k_step + distance_progress(d_t, d_next, w);
    if (cause == TerminalCause::timeout) {
        r -= w.k_timeout * d_terminal;
    }
    return r;
}

/// Everything the shaping reward needs from one continuous transition.
/// Accelerations are the applied (possibly clamp-shaped) commands.
struct ShapeTransition {
    double d_t = 0.0;
    double d_next = 0.0;
    double e_t = 0.0;
    double e_next = 0.0;
    double v_next = 0.0;
    double omega_t = 0.0;
    double omega_next = 0.0;
    double a_v = 0.0;
    double a_omega = 0.0;
    double sign_e0 = 0.0;   ///< sign of the heading error at episode start
    double goal_tol = 0.10;
};

[[nodiscard]] double shape_reward(const ShapeTransition& t, const RewardWeights& w,
                                  const MotionLimits& lim);

}  // namespace skidstack::rl
