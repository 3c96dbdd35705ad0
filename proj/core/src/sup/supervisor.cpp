// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/sup/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skidstack/io/csv.hpp"

namespace skidstack::sup {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::nominal: return "NOMINAL";
        case Mode::near_barrier: return "NEAR_BARRIER";
        case Mode::braking: return "BRAKING";
        case Mode::return_to_safe: return "RETURN_TO_SAFE";
        case Mode::stopped: return "STOPPED";
        case Mode::goal_reached: return "GOAL_REACHED";
    }
    return "UNKNOWN";
}

Command return_to_safe_command(const pose::PoseSample& pose, const SupervisorConfig& cfg,
                               const MotionLimits& lim) {
    const double dx = cfg.safe_x - pose.x;
    const double dy = cfg.safe_y - pose.y;
    const double d = std::hypot(dx, dy);
    if (d <= cfg.goal_tol) return {0.0, 0.0};
    const double e = wrap_pi(std::atan2(dy, dx) - pose.theta);
    Command cmd;
    cmd.omega = saturate(cfg.k_h * e, lim.omega_min, lim.omega_max);
    cmd.v = saturate(cfg.k_p * d, lim.v_min, lim.v_max) * std::max(0.0, std::cos(e));
    return cmd;
}

Supervisor::Supervisor(SupervisorConfig cfg, MotionLimits limits)
    : cfg_(cfg), limits_(limits) {
    transitions_.push_back({0, Mode::nominal, "init"});
}

void Supervisor::enter(Mode m, long tick, const std::string& cause) {
    mode_ = m;
    transitions_.push_back({tick, m, cause});
}

void Supervisor::notify_goal_reached(long tick, int goal_index) {
    if (latched()) return;
    transitions_.push_back({tick, Mode::goal_reached, "goal " + std::to_string(goal_index)});
    transitions_.push_back({tick, Mode::nominal, "next goal"});
    mode_ = Mode::nominal;
}

Supervisor::Decision Supervisor::supervise(const Command& planner_cmd,
                                           const ctl::SafetyZone& zone,
                                           const pose::PoseSample& trusted_pose,
                                           long tick) {
    Decision out;

    switch (mode_) {
        case Mode::stopped:
            out.cmd = {0.0, 0.0};
            out.planner_active = false;
            break;

        case Mode::return_to_safe: {
            out.planner_active = false;
            const double d = std::hypot(cfg_.safe_x - trusted_pose.x,
                                        cfg_.safe_y - trusted_pose.y);
            if (d <= cfg_.goal_tol) {
                enter(Mode::stopped, tick, "settled at safe point");
                out.cmd = {0.0, 0.0};
            } else {
                out.cmd = return_to_safe_command(trusted_pose, cfg_, limits_);
            }
            break;
        }

        case Mode::braking: {
            out.planner_active = false;
            // Deterministic open-loop ramp from the latched command.
            const double dv = std::abs(limits_.a_v_min) * limits_.dt;
            const double dw = std::abs(limits_.a_omega_min) * limits_.dt;
            brake_cmd_.v = std::max(0.0, brake_cmd_.v - dv);
            brake_cmd_.omega = (brake_cmd_.omega > 0.0)
                                   ? std::max(0.0, brake_cmd_.omega - dw)
                                   : std::min(0.0, brake_cmd_.omega + dw);
            out.cmd = brake_cmd_;
            if (brake_cmd_.v == 0.0 && brake_cmd_.omega == 0.0) {
                enter(Mode::return_to_safe, tick, "braking complete");
            }
            break;
        }

        case Mode::nominal:
        case Mode::near_barrier:
        case Mode::goal_reached: {
            if (zone.violated()) {
                brake_cmd_ = planner_cmd;  // ramp starts from the intended command
                enter(Mode::braking, tick, "barrier violation E >= O");
                // First braking tick happens immediately.
                const double dv = std::abs(limits_.a_v_min) * limits_.dt;
                const double dw = std::abs(limits_.a_omega_min) * limits_.dt;
                brake_cmd_.v = std::max(0.0, brake_cmd_.v - dv);
                brake_cmd_.omega = (brake_cmd_.omega > 0.0)
                                       ? std::max(0.0, brake_cmd_.omega - dw)
                                       : std::min(0.0, brake_cmd_.omega + dw);
                out.cmd = brake_cmd_;
                out.planner_active = false;
                if (brake_cmd_.v == 0.0 && brake_cmd_.omega == 0.0) {
                    enter(Mode::return_to_safe, tick, "braking complete");
                }
                break;
            }
            const double ratio = zone.ratio();
            if (ratio >= cfg_.near_ratio) {
                if (mode_ != Mode::near_barrier) {
                    enter(Mode::near_barrier, tick, "barrier proximity");
                }
                const double span = 1.0 - cfg_.near_ratio;
                double scale =
                    1.0 - (1.0 - cfg_.min_scale) * (ratio - cfg_.near_ratio) / span;
                scale = std::clamp(scale, cfg_.min_scale, 1.0);
                // Only the linear velocity is capped: turning in place cannot
                // grow E, and leaving the band usually requires re-aiming.
                out.cmd = {planner_cmd.v * scale, planner_cmd.omega};
            } else {
                if (mode_ == Mode::near_barrier) {
                    enter(Mode::nominal, tick, "left barrier proximity");
                }
                out.cmd = planner_cmd;
            }
            break;
        }
    }

    out.mode = mode_;
    return out;
}

void Supervisor::reset() {
    mode_ = Mode::nominal;
    brake_cmd_ = {};
    transitions_.push_back({-1, Mode::nominal, "external reset"});
}

void Supervisor::write_transition_log(const std::string& path) const {
    io::CsvWriter csv(path, {"tick", "mode", "cause"});
    for (const auto& tr : transitions_) {
        csv.row_mixed({std::to_string(tr.tick), to_string(tr.mode), tr.cause});
    }
}

GoalSequencer::GoalSequencer(std::vector<GoalSpec> goals, double zeta)
    : goals_(std::move(goals)), zeta_(zeta) {
    if (zeta_ <= 0.0) throw std::invalid_argument("GoalSequencer: zeta must be > 0");
}

const GoalSpec& GoalSequencer::current_goal() const {
    if (done()) throw std::logic_error("GoalSequencer: no current goal");
    return goals_[index_];
}

double GoalSequencer::distance_to_goal(const pose::PoseSample& measured) const {
    const auto& g = current_goal();
    return std::hypot(g.x_g - measured.x, g.y_g - measured.y);
}

ctl::SafetyZone GoalSequencer::zone(const pose::PoseSample& measured) const {
    if (done()) {
        // Holding zone at the rest point: a circle of radius zeta around the
        // last anchor. A faulted pose stream violates it within a tick.
        return ctl::update_safety_zone(measured.x - anchor_x_, measured.y - anchor_y_,
                                       0.0, 0.0, zeta_);
    }
    const auto& g = current_goal();
    return ctl::update_safety_zone(measured.x - anchor_x_, measured.y - anchor_y_,
                                   g.x_g - anchor_x_, g.y_g - anchor_y_, zeta_);
}

void GoalSequencer::advance(const pose::PoseSample& measured) {
    if (done()) throw std::logic_error("GoalSequencer: advance past the last goal");
    anchor_x_ = measured.x;
    anchor_y_ = measured.y;
    ++index_;
}

}  // namespace skidstack::sup
