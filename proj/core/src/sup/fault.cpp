// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/sup/fault.hpp"

#include <cmath>
#include <stdexcept>

namespace skidstack::sup {

const char* to_string(FaultType t) {
    switch (t) {
        case FaultType::none: return "none";
        case FaultType::pose_offset: return "pose-offset";
        case FaultType::pose_freeze: return "pose-freeze";
        case FaultType::pose_jump: return "pose-jump";
    }
    return "unknown";
}

FaultType fault_type_from_string(const std::string& name) {
    if (name == "none") return FaultType::none;
    if (name == "pose-offset" || name == "pose_offset") return FaultType::pose_offset;
    if (name == "pose-freeze" || name == "pose_freeze") return FaultType::pose_freeze;
    if (name == "pose-jump" || name == "pose_jump") return FaultType::pose_jump;
    throw std::invalid_argument("unknown fault type: " + name);
}

void FaultInjector::on_goal_reached(int goal_index) {
    if (event_.scheduled() && event_.trigger_goal > 0 && goal_index == event_.trigger_goal) {
        goal_armed_ = true;
    }
}

pose::PoseSample FaultInjector::apply(const pose::PoseSample& measured) {
    if (!event_.scheduled()) return measured;
    if (!active_) {
        const bool time_hit = event_.trigger_time >= 0.0 && measured.t >= event_.trigger_time;
        if (time_hit || goal_armed_) {
            active_ = true;
            frozen_ = measured;  // last clean sample
        } else {
            return measured;
        }
    }

    const double norm = std::hypot(event_.dir_x, event_.dir_y);
    const double ux = norm > 0.0 ? event_.dir_x / norm : 0.0;
    const double uy = norm > 0.0 ? event_.dir_y / norm : 1.0;

    switch (event_.type) {
        case FaultType::none:
            return measured;
        case FaultType::pose_offset: {
            // Constant bias from the trigger onward.
            pose::PoseSample s = measured;
            s.x += event_.magnitude * ux;
            s.y += event_.magnitude * uy;
            return s;
        }
        case FaultType::pose_freeze: {
            pose::PoseSample s = *frozen_;
            s.t = measured.t;
            return s;
        }
        case FaultType::pose_jump: {
            // Single-sample spike; later samples pass through clean. The
            // supervisor latch must survive a one-tick violation.
            if (jump_fired_) return measured;
            jump_fired_ = true;
            pose::PoseSample s = measured;
            s.x += event_.magnitude * ux;
            s.y += event_.magnitude * uy;
            return s;
        }
    }
    return measured;
}

}  // namespace skidstack::sup
