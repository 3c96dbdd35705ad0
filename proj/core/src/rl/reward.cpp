// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/rl/reward.hpp"

#include <algorithm>

namespace skidstack::rl {

const char* to_string(TerminalCause cause) {
    switch (cause) {
        case TerminalCause::none: return "none";
        case TerminalCause::goal: return "goal";
        case TerminalCause::timeout: return "timeout";
        case TerminalCause::out_of_workspace: return "out_of_workspace";
    }
    return "unknown";
}

double shape_reward(const ShapeTransition& t, const RewardWeights& w,
                    const MotionLimits& lim) {
    const double abs_e_t = std::abs(t.e_t);
    const double abs_e_next = std::abs(t.e_next);
    const double cos_e_next = std::cos(t.e_next);
    const double sin_e_next = std::sin(t.e_next);
    const double align = 0.5 * (1.0 + cos_e_next);  // (1 + cos|e|)/2, cos is even

    // 1: heading progress.
    const double r_theta = heading_progress(t.e_t, t.e_next, w);

    // 2: angular velocity penalty, strongest near alignment.
    const double r_omega = -w.k_omega * align * t.omega_next * t.omega_next;

    // 3: forward speed reward gated on facing the goal.
    const double fwd = std::max(0.0, cos_e_next);
    const double r_v_par = w.k_v * t.v_next * fwd * fwd;

    // 4: lateral speed penalty.
    const double r_v_perp = -w.k_lat * t.v_next * t.v_next * sin_e_next * sin_e_next;

    // 5: acceleration penalties; the angular one tightens near alignment.
    const double r_a = -w.k_av * t.a_v * t.a_v -
                       w.k_aomega * (0.5 + 0.5 * align) * t.a_omega * t.a_omega;

    // 6: hysteresis penalty on residual spin inside the heading deadband.
    double r_hyst = 0.0;
    if (abs_e_next < w.e_db) {
        const double excess_spin = std::max(0.0, std::abs(t.omega_next) - w.omega_db);
        r_hyst = -w.k_ws * excess_spin * excess_spin;
    }

    // 7: terminal success bonus, scaled by the pre-transition distance.
    const double r_goal = (t.d_next <= t.goal_tol) ? w.k_d * t.d_t : 0.0;

    // 8: angular velocity sign flip penalty.
    const double r_flip = (t.omega_t * t.omega_next < 0.0) ? -w.k_wflip : 0.0;

    // 9: heading error increase penalty.
    const double delta_e = abs_e_next - abs_e_t;
    const double r_inc = -w.k_head_inc * std::max(0.0, delta_e);

    // 10: stalled-correction penalty. The window is a rate (rad/s) scaled by
    // the step length: an actively rotating agent changes |e| faster than
    // delta_e_head * dt and escapes the tax, a parked misaligned one does not.
    const double r_stall = (std::abs(delta_e) < w.delta_e_head * lim.dt)
                               ? -w.k_head_stall * abs_e_next
                               : 0.0;

    // 11: predictive stop penalty. theta_stop = omega^2 / (2 a_omega^B) is the
    // angle needed to brake the spin; excess beyond |e|+e_pad is penalized.
    const double a_brake = std::max(std::abs(lim.a_omega_min), lim.a_omega_max);
    const double theta_stop = t.omega_next * t.omega_next / (2.0 * a_brake);
    const double excess = std::max(0.0, theta_stop - (abs_e_next + w.e_pad));
    const double r_stop = -w.k_wstop * excess * excess;

    // 12: wrong-direction spin relative to the initial heading error sign.
    const double wrong = std::max(0.0, -t.sign_e0 * t.omega_next - w.omega_db);
    const double r_sign = (wrong > 0.0) ? -w.k_wsign * wrong * wrong : 0.0;

    return r_theta + r_omega + r_v_par + r_v_perp + r_a + r_hyst + r_goal + r_flip +
           r_inc + r_stall + r_stop + r_sign;
}

}  // namespace skidstack::rl
