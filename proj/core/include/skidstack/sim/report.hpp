// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Run reports and step-response metrics. Settling time is the last entry
// into the +-2% band of the reference, overshoot is the maximum excess over
// it, steady-state error is the mean |e| over the final 10% of the segment.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skidstack::sim {

struct GoalResult {
    int index = 0;  ///< 1-based position in the sequence
    double goal_x = 0.0, goal_y = 0.0;
    double final_true_x = 0.0, final_true_y = 0.0;
    double final_meas_x = 0.0, final_meas_y = 0.0;
    double err_true = 0.0;
    double err_meas = 0.0;
    double t_reached = 0.0;
};

struct StepMetrics {
    double peak_time = 0.0;          ///< s
    double overshoot = 0.0;          ///< m/s over the reference
    double settling_time = 0.0;      ///< s
    double steady_state_error = 0.0; ///< m/s
};

/// Metrics over one constant-reference segment sampled at t.
StepMetrics step_metrics(std::span<const double> t, double reference,
                         std::span<const double> actual);

struct RunReport {
    std::string scenario;
    std::string mode;
    std::string terrain;
    std::uint64_t seed = 0;
    bool success = false;
    std::string failure_reason;
    std::vector<GoalResult> goals;
    double rmse_true = 0.0;  ///< over goal rows plus the safe-return row if present
    double rmse_meas = 0.0;
    std::optional<GoalResult> safe_return;
    std::optional<long> violation_tick;  ///< first tick with E >= O
    std::optional<long> braking_tick;    ///< tick BRAKING engaged
    std::vector<StepMetrics> wheel_metrics;  ///< step scenarios, one per wheel
    long ticks = 0;
    double sim_time_s = 0.0;

    /// Recomputes the RMSE fields from the recorded rows.
    void finalize_rmse();

    [[nodiscard]] std::string to_json_string() const;
    void save(const std::string& path) const;
    static RunReport load(const std::string& path);
};

}  // namespace skidstack::sim
