// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/sim/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace skidstack::sim {

using nlohmann::json;

StepMetrics step_metrics(std::span<const double> t, double reference,
                         std::span<const double> actual) {
    StepMetrics m;
    const std::size_t n = actual.size();
    if (n == 0 || t.size() != n) {
        throw std::invalid_argument("step_metrics: empty or mismatched series");
    }

    std::size_t peak_idx = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (actual[k] > actual[peak_idx]) peak_idx = k;
    }
    m.peak_time = t[peak_idx] - t[0];
    m.overshoot = std::max(0.0, actual[peak_idx] - reference);

    const double band = 0.02 * std::abs(reference);
    std::size_t last_outside = n;  // n = never outside
    for (std::size_t k = n; k-- > 0;) {
        if (std::abs(actual[k] - reference) > band) {
            last_outside = k;
            break;
        }
    }
    if (last_outside == n) {
        m.settling_time = 0.0;  // always inside the band
    } else if (last_outside + 1 >= n) {
        m.settling_time = t[n - 1] - t[0];  // never settles within the horizon
    } else {
        m.settling_time = t[last_outside + 1] - t[0];
    }

    const std::size_t tail_start = n - std::max<std::size_t>(1, n / 10);
    double acc = 0.0;
    for (std::size_t k = tail_start; k < n; ++k) {
        acc += std::abs(actual[k] - reference);
    }
    m.steady_state_error = acc / static_cast<double>(n - tail_start);
    return m;
}

void RunReport::finalize_rmse() {
    double sum_true = 0.0, sum_meas = 0.0;
    std::size_t count = goals.size();
    for (const auto& g : goals) {
        sum_true += g.err_true * g.err_true;
        sum_meas += g.err_meas * g.err_meas;
    }
    if (safe_return) {
        sum_true += safe_return->err_true * safe_return->err_true;
        sum_meas += safe_return->err_meas * safe_return->err_meas;
        ++count;
    }
    rmse_true = count ? std::sqrt(sum_true / static_cast<double>(count)) : 0.0;
    rmse_meas = count ? std::sqrt(sum_meas / static_cast<double>(count)) : 0.0;
}

namespace {

json goal_to_json(const GoalResult& g) {
    return json{{"index", g.index},
                {"goal", {g.goal_x, g.goal_y}},
                {"final_true", {g.final_true_x, g.final_true_y}},
                {"final_meas", {g.final_meas_x, g.final_meas_y}},
                {"err_true", g.err_true},
                {"err_meas", g.err_meas},
                {"t_reached", g.t_reached}};
}

GoalResult goal_from_json(const json& j) {
    GoalResult g;
    g.index = j.at("index").get<int>();
    g.goal_x = j.at("goal")[0].get<double>();
    g.goal_y = j.at("goal")[1].get<double>();
    g.final_true_x = j.at("final_true")[0].get<double>();
    g.final_true_y = j.at("final_true")[1].get<double>();
    g.final_meas_x = j.at("final_meas")[0].get<double>();
    g.final_meas_y = j.at("final_meas")[1].get<double>();
    g.err_true = j.at("err_true").get<double>();
    g.err_meas = j.at("err_meas").get<double>();
    g.t_reached = j.at("t_reached").get<double>();
    return g;
}

json metrics_to_json(const StepMetrics& m) {
    return json{{"peak_time", m.peak_time},
                {"overshoot", m.overshoot},
                {"settling_time", m.settling_time},
                {"steady_state_error", m.steady_state_error}};
}

}  // namespace

std::string RunReport::to_json_string() const {
    json j;
    j["kind"] = "run_report";
    j["scenario"] = scenario;
    j["mode"] = mode;
    j["terrain"] = terrain;
    j["seed"] = seed;
    j["success"] = success;
    j["failure_reason"] = failure_reason;
    json goals_json = json::array();
    for (const auto& g : goals) goals_json.push_back(goal_to_json(g));
    j["goals"] = std::move(goals_json);
    j["rmse_true"] = rmse_true;
    j["rmse_meas"] = rmse_meas;
    j["safe_return"] = safe_return ? goal_to_json(*safe_return) : json(nullptr);
    j["violation_tick"] = violation_tick ? json(*violation_tick) : json(nullptr);
    j["braking_tick"] = braking_tick ? json(*braking_tick) : json(nullptr);
    json wm = json::array();
    for (const auto& m : wheel_metrics) wm.push_back(metrics_to_json(m));
    j["wheel_metrics"] = std::move(wm);
    j["ticks"] = ticks;
    j["sim_time_s"] = sim_time_s;
    return j.dump(2) + "\n";
}

void RunReport::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("RunReport::save: cannot open " + path);
    out << to_json_string();
}

RunReport RunReport::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("RunReport::load: cannot open " + path);
    json j = json::parse(in);
    RunReport r;
    r.scenario = j.value("scenario", "");
    r.mode = j.value("mode", "");
    r.terrain = j.value("terrain", "");
    r.seed = j.value("seed", 0ULL);
    r.success = j.at("success").get<bool>();
    r.failure_reason = j.value("failure_reason", "");
    for (const auto& g : j.at("goals")) r.goals.push_back(goal_from_json(g));
    r.rmse_true = j.at("rmse_true").get<double>();
    r.rmse_meas = j.at("rmse_meas").get<double>();
    if (!j.at("safe_return").is_null()) r.safe_return = goal_from_json(j.at("safe_return"));
    if (!j.at("violation_tick").is_null()) r.violation_tick = j.at("violation_tick").get<long>();
    if (!j.at("braking_tick").is_null()) r.braking_tick = j.at("braking_tick").get<long>();
    for (const auto& m : j.at("wheel_metrics")) {
        StepMetrics sm;
        sm.peak_time = m.at("peak_time").get<double>();
        sm.overshoot = m.at("overshoot").get<double>();
        sm.settling_time = m.at("settling_time").get<double>();
        sm.steady_state_error = m.at("steady_state_error").get<double>();
        r.wheel_metrics.push_back(sm);
    }
    r.ticks = j.at("ticks").get<long>();
    r.sim_time_s = j.at("sim_time_s").get<double>();
    return r;
}

}  // namespace skidstack::sim
