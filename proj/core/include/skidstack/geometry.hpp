// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Continuous robot state, goal geometry and the discrete-time unicycle
// transition shared by the planner's training environment and the
// closed-loop simulator.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skidstack {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Continuous robot state. theta is kept in [-pi, pi).
struct RobotState {
    double x = 0.0;      ///< position, m
    double y = 0.0;      ///< position, m
    double theta = 0.0;  ///< heading, rad in [-pi, pi)
    double v = 0.0;      ///< linear velocity, m/s
    double omega = 0.0;  ///< angular velocity, rad/s
};

struct GoalSpec {
    double x_g = 0.0;
    double y_g = 0.0;
    double goal_tol = 0.10;  ///< goal tolerance radius, m (> 0)
};

/// Axis-aligned rectangular workspace. Boundary is inclusive.
struct Workspace {
    double x_lo = -25.0;
    double x_hi = 25.0;
    double y_lo = -25.0;
    double y_hi = 25.0;

    [[nodiscard]] double diagonal() const {
        return std::hypot(x_hi - x_lo, y_hi - y_lo);
    }
};

/// Velocity and acceleration bounds plus the control period.
struct MotionLimits {
    double v_min = 0.0;
    double v_max = 0.25;
    double omega_min = -0.15;
    double omega_max = 0.15;
    double a_v_min = -0.10;
    double a_v_max = 0.10;
    double a_omega_min = -0.02;
    double a_omega_max = 0.02;
    double dt = 0.05;  ///< s
};

struct GoalFeatures {
    double distance = 0.0;       ///< m, >= 0
    double heading_error = 0.0;  ///< rad in [-pi, pi)
};

[[nodiscard]] inline double saturate(double x, double lo, double hi) {
    return std::clamp(x, lo, hi);
}

/// Wraps an angle into [-pi, pi). Throws std::domain_error on non-finite input.
[[nodiscard]] inline double wrap_pi(double angle) {
    if (!std::isfinite(angle)) {
        throw std::domain_error("wrap_pi: non-finite angle");
    }
    double wrapped = angle - kTwoPi * std::floor((angle + kPi) / kTwoPi);
    // Guard the half-open range against floating-point rounding at the seam.
    if (wrapped >= kPi) wrapped -= kTwoPi;
    if (wrapped < -kPi) wrapped += kTwoPi;
    return wrapped;
}

/// Distance and wrapped heading error from a state to a goal.
[[nodiscard]] inline GoalFeatures goal_features(const RobotState& state,
                                                const GoalSpec& goal) {
    const double dx = goal.x_g - state.x;
    const double dy = goal.y_g - state.y;
    GoalFeatures f;
    f.distance = std::hypot(dx, dy);
    f.heading_error = wrap_pi(std::atan2(dy, dx) - state.theta);
    return f;
}

/// One explicit first-order step of the unicycle model: velocities update and
/// saturate first, position advances with the new speed and the old heading,
/// heading advances with the new angular rate and wraps.
[[nodiscard]] inline RobotState step_unicycle(const RobotState& s, double a_v,
                                              double a_omega,
                                              const MotionLimits& lim) {
    RobotState n;
    n.v = saturate(s.v + a_v * lim.dt, lim.v_min, lim.v_max);
    n.omega = saturate(s.omega + a_omega * lim.dt, lim.omega_min, lim.omega_max);
    n.x = s.x + n.v * std::cos(s.theta) * lim.dt;
    n.y = s.y + n.v * std::sin(s.theta) * lim.dt;
    n.theta = wrap_pi(s.theta + n.omega * lim.dt);
    return n;
}

/// True iff the state's position lies inside the workspace (closed boundary).
[[nodiscard]] inline bool in_workspace(const RobotState& s, const Workspace& ws) {
    return s.x >= ws.x_lo && s.x <= ws.x_hi && s.y >= ws.y_lo && s.y <= ws.y_hi;
}

}  // namespace skidstack
