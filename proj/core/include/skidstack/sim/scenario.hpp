// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Scenario configuration for the closed-loop harness, read from a sectioned
// key-value file. Motion limits come from the Q-table artifact so the
// executed policy always matches its training kinematics.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skidstack/act/plant.hpp"
#include "skidstack/ctl/allocation.hpp"
#include "skidstack/ctl/wheel_loop.hpp"
#include "skidstack/geometry.hpp"
#include "skidstack/pose/pose_provider.hpp"
#include "skidstack/sup/fault.hpp"

namespace skidstack::sim {

enum class Terrain { asphalt, soft };
enum class ScenarioMode { mission, step };

[[nodiscard]] const char* to_string(Terrain t);
[[nodiscard]] Terrain terrain_from_string(const std::string& name);
[[nodiscard]] const char* to_string(ScenarioMode m);

/// Disturbance bound preset: a fraction of the peak drag/friction magnitude
/// over the wheel operating range (asphalt-like 5%, soft-soil-like 25%).
[[nodiscard]] double terrain_disturbance_bound(Terrain t, const act::PlantParams& plant,
                                               double wheel_v_lo, double wheel_v_hi);

struct ScenarioConfig {
    std::string name = "scenario";
    ScenarioMode mode = ScenarioMode::mission;
    Terrain terrain = Terrain::asphalt;
    std::uint64_t seed = 1;

    // Mission.
    std::vector<GoalSpec> goals;
    double zeta = 2.0;            ///< safety offset, m
    double goal_tol = 0.10;       ///< m
    double segment_timeout_s = 240.0;
    double start_theta = 0.0;     ///< initial heading at the world origin
    std::string qtable_path;
    std::string model_path;

    // Pose channel.
    std::string pose_mode = "truth";  ///< truth | noisy | replay
    pose::NoiseSpec noise;
    std::string pose_log_path;

    sup::FaultEvent fault;

    // Plant and controller.
    ctl::VehicleGeometry geometry;
    act::PlantParams plant;
    ctl::ControllerGains gains;
    double chi0 = 0.1;            ///< adaptive gain initialization
    act::DisturbanceSpec disturbance{act::SlipModel::stochastic, 0.0, 1.0, 3.0, 0};
    ///< slip model; a zero bound is filled from the terrain preset
    double wheel_v_lo = -0.4;     ///< wheel operating range for presets, m/s
    double wheel_v_hi = 0.4;

    // Step-response scenario.
    double step_ref = 0.2;        ///< m/s
    double step_duration_s = 30.0;
    double step_zone_ratio = 0.5; ///< fixed E/O during the step run

    /// Reads the file and resolves artifact paths against its directory.
    static ScenarioConfig load(const std::string& path);

    /// Fills the disturbance preset and checks invariants; throws with a
    /// descriptive message on any problem. Artifact files are probed here so
    /// failures happen at startup, never mid-run.
    void finalize_and_validate();
};

}  // namespace skidstack::sim
