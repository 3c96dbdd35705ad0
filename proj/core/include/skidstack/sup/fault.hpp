// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Deterministic corruption of the measured pose stream, triggered by time
// or by reaching a given goal index. Only the measurement channel is
// touched; the simulator truth is never altered.

#pragma once

#include <optional>
#include <string>

#include "skidstack/pose/pose_provider.hpp"

namespace skidstack::sup {

enum class FaultType { none, pose_offset, pose_freeze, pose_jump };

[[nodiscard]] const char* to_string(FaultType t);
[[nodiscard]] FaultType fault_type_from_string(const std::string& name);

struct FaultEvent {
    FaultType type = FaultType::none;
    int trigger_goal = -1;     ///< 1-based goal index; -1 = no goal trigger
    double trigger_time = -1;  ///< s; < 0 = no time trigger
    double magnitude = 0.0;    ///< m
    double dir_x = 0.0;        ///< offset/jump direction (normalized on use)
    double dir_y = 1.0;

    [[nodiscard]] bool scheduled() const { return type != FaultType::none; }
};

class FaultInjector {
public:
    FaultInjector() = default;
    explicit FaultInjector(const FaultEvent& event) : event_(event) {}

    /// Notifies that the given 1-based goal index was just reached.
    void on_goal_reached(int goal_index);

    /// Applies the fault to a measured sample; passes through until the
    /// trigger fires. pose_freeze holds the last clean sample.
    [[nodiscard]] pose::PoseSample apply(const pose::PoseSample& measured);

    [[nodiscard]] bool active() const { return active_; }
    [[nodiscard]] const FaultEvent& event() const { return event_; }

private:
    FaultEvent event_;
    bool active_ = false;
    bool goal_armed_ = false;
    bool jump_fired_ = false;
    std::optional<pose::PoseSample> frozen_;
};

}  // namespace skidstack::sup
