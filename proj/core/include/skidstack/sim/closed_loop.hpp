// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Closed-loop execution: measured pose -> greedy planner -> safety
// supervisor -> skid-steer allocation -> per-wheel adaptive control ->
// disturbed plants -> body kinematics. One telemetry row per control tick.

#pragma once

#include <memory>
#include <string>

#include "skidstack/geometry.hpp"
#include "skidstack/pose/pose_provider.hpp"
#include "skidstack/rl/qtable.hpp"
#include "skidstack/sim/report.hpp"
#include "skidstack/sim/scenario.hpp"
#include "skidstack/sup/supervisor.hpp"

namespace skidstack::sim {

/// Evaluation-time policy around a trained Q-table: keeps the commanded
/// (v, omega) pair as internal state, reads the measured pose, and emits the
/// next velocity command after hysteresis/zero-lock shaping.
class GreedyPlanner {
public:
    explicit GreedyPlanner(rl::QTable::Loaded artifacts);

    [[nodiscard]] sup::Command tick(const pose::PoseSample& measured, const GoalSpec& goal);

    /// Keeps the internal command state aligned with what was executed after
    /// supervisor shaping.
    void follow(const sup::Command& executed);

    /// Deceleration-to-rest command used when there is no active goal.
    [[nodiscard]] sup::Command hold_command();

    [[nodiscard]] const MotionLimits& limits() const { return limits_; }
    [[nodiscard]] const sup::Command& command() const { return command_; }

private:
    rl::QTable q_;
    rl::RewardWeights weights_;
    MotionLimits limits_;
    sup::Command command_;
};

struct SimOutputs {
    RunReport report;
    std::string telemetry_path;
    std::string mode_log_path;
};

/// Runs one scenario to completion. Telemetry and the mode-transition log
/// are written under out_dir; the report is returned (not yet saved).
SimOutputs run_scenario(const ScenarioConfig& config, const std::string& out_dir);

}  // namespace skidstack::sim
