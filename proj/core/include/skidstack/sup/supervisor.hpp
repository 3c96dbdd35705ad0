// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Safety supervisor state machine. Mode graph:
//   NOMINAL <-> NEAR_BARRIER                  (barrier proximity band)
//   {NOMINAL, NEAR_BARRIER} -> BRAKING        (on E >= O, latched)
//   BRAKING -> RETURN_TO_SAFE                 (at zero commanded speed)
//   RETURN_TO_SAFE -> STOPPED                 (within tolerance of the safe point)
//   NOMINAL -> GOAL_REACHED -> NOMINAL        (goal progression pulse)
// BRAKING and RETURN_TO_SAFE are latched: only reset() re-arms NOMINAL.
// The recovery command consumes the trusted pose channel.

#pragma once

#include <string>
#include <vector>

#include "skidstack/ctl/safety_zone.hpp"
#include "skidstack/geometry.hpp"
#include "skidstack/pose/pose_provider.hpp"

namespace skidstack::sup {

enum class Mode { nominal, near_barrier, braking, return_to_safe, stopped, goal_reached };

[[nodiscard]] const char* to_string(Mode m);

struct Command {
    double v = 0.0;
    double omega = 0.0;
};

struct SupervisorConfig {
    double near_ratio = 0.9;   ///< E/O entering NEAR_BARRIER
    double min_scale = 0.2;    ///< velocity cap scale at E/O = 1
    double k_p = 0.5;          ///< return-to-safe distance gain, 1/s
    double k_h = 0.8;          ///< return-to-safe heading gain, 1/s
    double goal_tol = 0.10;    ///< m, settle radius at the safe point
    double safe_x = 0.0;       ///< safe site, world frame
    double safe_y = 0.0;
};

/// Heading-proportional go-to-point law toward the safe site: the forward
/// speed is gated by the heading error cosine so the robot turns in place
/// first, then drives.
[[nodiscard]] Command return_to_safe_command(const pose::PoseSample& pose,
                                             const SupervisorConfig& cfg,
                                             const MotionLimits& lim);

struct ModeTransition {
    long tick = 0;
    Mode mode = Mode::nominal;
    std::string cause;
};

class Supervisor {
public:
    Supervisor(SupervisorConfig cfg, MotionLimits limits);

    struct Decision {
        Command cmd;
        Mode mode = Mode::nominal;
        bool planner_active = true;  ///< false once the latched chain owns the command
    };

    /// One call per control tick. The zone carries the measured-channel
    /// barrier state; trusted_pose drives the recovery command.
    Decision supervise(const Command& planner_cmd, const ctl::SafetyZone& zone,
                       const pose::PoseSample& trusted_pose, long tick);

    /// Pulses GOAL_REACHED for the current tick's log; allowed only while the
    /// supervisor is not latched.
    void notify_goal_reached(long tick, int goal_index);

    [[nodiscard]] Mode mode() const { return mode_; }
    [[nodiscard]] bool latched() const {
        return mode_ == Mode::braking || mode_ == Mode::return_to_safe ||
               mode_ == Mode::stopped;
    }
    [[nodiscard]] const std::vector<ModeTransition>& transitions() const {
        return transitions_;
    }

    /// External reset back to NOMINAL (operator action, not reachable from
    /// within the mode graph).
    void reset();

    void write_transition_log(const std::string& path) const;

private:
    void enter(Mode m, long tick, const std::string& cause);

    SupervisorConfig cfg_;
    MotionLimits limits_;
    Mode mode_ = Mode::nominal;
    Command brake_cmd_;  ///< latched ramp state while BRAKING
    std::vector<ModeTransition> transitions_;
};

/// World-frame goal list with per-segment re-anchoring: each segment is
/// expressed in a frame whose origin is the pose at which the previous goal
/// was declared reached.
class GoalSequencer {
public:
    GoalSequencer() = default;
    GoalSequencer(std::vector<GoalSpec> goals, double zeta);

    [[nodiscard]] bool done() const { return index_ >= goals_.size(); }
    [[nodiscard]] int current_index() const { return static_cast<int>(index_); }  // 0-based
    [[nodiscard]] const GoalSpec& current_goal() const;
    [[nodiscard]] std::size_t total() const { return goals_.size(); }

    /// Distance from a measured pose to the current goal.
    [[nodiscard]] double distance_to_goal(const pose::PoseSample& measured) const;

    /// Segment-frame safety zone for a measured pose.
    [[nodiscard]] ctl::SafetyZone zone(const pose::PoseSample& measured) const;

    /// Re-anchors at the measured pose and moves to the next goal. Call only
    /// when the current goal is reached.
    void advance(const pose::PoseSample& measured);

private:
    std::vector<GoalSpec> goals_;
    double zeta_ = 2.0;
    std::size_t index_ = 0;
    double anchor_x_ = 0.0;
    double anchor_y_ = 0.0;
};

}  // namespace skidstack::sup
