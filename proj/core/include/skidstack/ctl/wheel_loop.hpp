// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Per-wheel robust adaptive feedback around the learned inverse model:
//   u = u_IDM - (1/2) eps e - gamma e log^2(O/(O-E)) chi_hat
//   d(chi_hat)/dt = -delta chi_hat + gamma e^2 log^2(O/(O-E))
// with e = v_measured - v_ref. The adaptive gain stays non-negative for a
// positive start as long as delta * dt <= 1.

#pragma once

#include <stdexcept>

#include "skidstack/ctl/safety_zone.hpp"

namespace skidstack::ctl {

struct ControllerGains {
    double epsilon = 1.0;
    double gamma = 0.01;
    double delta = 0.2;
    double kappa = 0.5;  ///< analysis constant, must stay below epsilon

    void validate() const {
        if (epsilon <= 0.0 || gamma <= 0.0 || delta <= 0.0 || kappa <= 0.0) {
            throw std::invalid_argument("ControllerGains: all gains must be > 0");
        }
        if (epsilon <= kappa) {
            throw std::invalid_argument("ControllerGains: epsilon must exceed kappa");
        }
    }
};

struct WheelLoopState {
    double tracking_error = 0.0;  ///< e, m/s
    double chi_hat = 0.1;         ///< adaptive gain, >= 0
    double last_u = 0.0;
};

struct ControlResult {
    double u = 0.0;
    bool barrier_violated = false;
};

/// One control tick. On a violated zone the barrier terms drop out (gain 0)
/// and the violation is flagged for the supervisor; the loop still produces
/// a usable proportional command for braking and recovery.
[[nodiscard]] inline ControlResult control_step(WheelLoopState& loop, double v_measured,
                                                double v_ref, double u_idm,
                                                const SafetyZone& zone,
                                                const ControllerGains& gains, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("control_step: dt must be > 0");
    const BarrierGain bg = barrier_gain(zone);
    const double e = v_measured - v_ref;
    const double u =
        u_idm - 0.5 * gains.epsilon * e - gains.gamma * e * bg.value * loop.chi_hat;
    const double chi_dot = -gains.delta * loop.chi_hat + gains.gamma * e * e * bg.value;
    loop.chi_hat += dt * chi_dot;
    loop.tracking_error = e;
    loop.last_u = u;
    return {u, bg.violated};
}

}  // namespace skidstack::ctl
