// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/sim/scenario.hpp"

#include <filesystem>
#include <stdexcept>

#include "skidstack/io/ini.hpp"

namespace skidstack::sim {

namespace fs = std::filesystem;

const char* to_string(Terrain t) {
    return t == Terrain::asphalt ? "asphalt" : "soft";
}

Terrain terrain_from_string(const std::string& name) {
    if (name == "asphalt") return Terrain::asphalt;
    if (name == "soft") return Terrain::soft;
    throw std::invalid_argument("unknown terrain: " + name);
}

const char* to_string(ScenarioMode m) {
    return m == ScenarioMode::mission ? "mission" : "step";
}

double terrain_disturbance_bound(Terrain t, const act::PlantParams& plant,
                                 double wheel_v_lo, double wheel_v_hi) {
    const double peak = plant.peak_friction(wheel_v_lo, wheel_v_hi);
    return (t == Terrain::asphalt ? 0.05 : 0.25) * peak;
}

namespace {

std::string resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return path.string();
    return (base / path).lexically_normal().string();
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    const auto ini = io::Ini::load(path);
    const fs::path base = fs::path(path).parent_path();
    ScenarioConfig c;

    c.name = ini.get_string("scenario", "name", fs::path(path).stem().string());
    const std::string mode = ini.get_string("scenario", "mode", "mission");
    if (mode == "mission") {
        c.mode = ScenarioMode::mission;
    } else if (mode == "step") {
        c.mode = ScenarioMode::step;
    } else {
        throw std::runtime_error("scenario: unknown mode " + mode);
    }
    c.terrain = terrain_from_string(ini.get_string("scenario", "terrain", "asphalt"));
    c.seed = static_cast<std::uint64_t>(ini.get_int("scenario", "seed", 1));
    c.zeta = ini.get_double("scenario", "zeta", 2.0);
    c.goal_tol = ini.get_double("scenario", "goal_tol", 0.10);
    c.segment_timeout_s = ini.get_double("scenario", "segment_timeout_s", 240.0);
    c.start_theta = ini.get_double("scenario", "start_theta", 0.0);
    c.qtable_path = resolve(base, ini.get_string("scenario", "qtable", ""));
    c.model_path = resolve(base, ini.get_string("scenario", "model", ""));

    for (const auto& g : ini.get_all("goals", "goal")) {
        const auto xy = io::Ini::parse_number_list(g);
        if (xy.size() != 2) {
            throw std::runtime_error("scenario: goal must be 'x, y': " + g);
        }
        c.goals.push_back(GoalSpec{xy[0], xy[1], c.goal_tol});
    }
    for (auto& g : c.goals) g.goal_tol = c.goal_tol;

    c.pose_mode = ini.get_string("pose", "mode", "truth");
    c.noise.sigma_xy = ini.get_double("pose", "sigma_xy", 0.0);
    c.noise.sigma_theta = ini.get_double("pose", "sigma_theta", 0.0);
    c.noise.seed = static_cast<std::uint64_t>(ini.get_int("pose", "seed", 7));
    c.pose_log_path = resolve(base, ini.get_string("pose", "log", ""));

    const std::string fault_type = ini.get_string("fault", "type", "none");
    c.fault.type = sup::fault_type_from_string(fault_type);
    c.fault.trigger_goal = static_cast<int>(ini.get_int("fault", "trigger_goal", -1));
    c.fault.trigger_time = ini.get_double("fault", "trigger_time", -1.0);
    c.fault.magnitude = ini.get_double("fault", "magnitude", 0.0);
    if (ini.has("fault", "direction")) {
        const auto d = io::Ini::parse_number_list(*ini.get("fault", "direction"));
        if (d.size() != 2) throw std::runtime_error("scenario: fault direction must be 'x, y'");
        c.fault.dir_x = d[0];
        c.fault.dir_y = d[1];
    }

    c.geometry.track_width = ini.get_double("vehicle", "track_width", 2.0);
    c.geometry.wheel_radius = ini.get_double("vehicle", "wheel_radius", 0.4);

    c.plant.inertia = ini.get_double("plant", "inertia", 120.0);
    c.plant.c1 = ini.get_double("plant", "c1", 40.0);
    c.plant.c2 = ini.get_double("plant", "c2", 15.0);
    c.plant.c3 = ini.get_double("plant", "c3", 25.0);
    c.plant.v_s = ini.get_double("plant", "v_s", 0.02);
    c.plant.wheel_radius = c.geometry.wheel_radius;

    c.gains.epsilon = ini.get_double("controller", "epsilon", 1.0);
    c.gains.gamma = ini.get_double("controller", "gamma", 0.01);
    c.gains.delta = ini.get_double("controller", "delta", 0.2);
    c.gains.kappa = ini.get_double("controller", "kappa", c.gains.epsilon / 2.0);
    c.chi0 = ini.get_double("controller", "chi0", 0.1);

    c.disturbance.model =
        act::slip_model_from_string(ini.get_string("disturbance", "model", "stochastic"));
    c.disturbance.bound = ini.get_double("disturbance", "bound", 0.0);
    c.disturbance.band_lo = ini.get_double("disturbance", "band_lo", 1.0);
    c.disturbance.band_hi = ini.get_double("disturbance", "band_hi", 3.0);
    c.wheel_v_lo = ini.get_double("disturbance", "wheel_v_lo", -0.4);
    c.wheel_v_hi = ini.get_double("disturbance", "wheel_v_hi", 0.4);

    c.step_ref = ini.get_double("step", "ref", 0.2);
    c.step_duration_s = ini.get_double("step", "duration_s", 30.0);
    c.step_zone_ratio = ini.get_double("step", "zone_ratio", 0.5);

    return c;
}

void ScenarioConfig::finalize_and_validate() {
    geometry.validate();
    plant.validate();
    gains.validate();
    if (goal_tol <= 0.0) throw std::runtime_error("scenario: goal_tol must be > 0");
    if (zeta <= 0.0) throw std::runtime_error("scenario: zeta must be > 0");
    if (chi0 <= 0.0) throw std::runtime_error("scenario: chi0 must be > 0");

    // Terrain preset unless explicitly overridden.
    if (disturbance.bound <= 0.0 && disturbance.model != act::SlipModel::none) {
        disturbance.bound = terrain_disturbance_bound(terrain, plant, wheel_v_lo, wheel_v_hi);
    }
    if (disturbance.seed == 0) disturbance.seed = seed;

    if (mode == ScenarioMode::mission) {
        if (qtable_path.empty() || !std::filesystem::exists(qtable_path)) {
            throw std::runtime_error("scenario: Q-table artifact missing: " +
                                     (qtable_path.empty() ? "<unset>" : qtable_path));
        }
    }
    if (model_path.empty() || !std::filesystem::exists(model_path)) {
        throw std::runtime_error("scenario: inverse model artifact missing: " +
                                 (model_path.empty() ? "<unset>" : model_path));
    }
    if (pose_mode == "replay" && !std::filesystem::exists(pose_log_path)) {
        throw std::runtime_error("scenario: pose log missing: " + pose_log_path);
    }
    if (fault.scheduled() && fault.trigger_goal > 0 &&
        fault.trigger_goal > static_cast<int>(goals.size())) {
        throw std::runtime_error("scenario: fault trigger_goal beyond the goal list");
    }
}

}  // namespace skidstack::sim
