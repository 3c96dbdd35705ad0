// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/sim/closed_loop.hpp"

#include <array>
#include <cmath>
#include <filesystem>

#include "skidstack/act/plant.hpp"
#include "skidstack/ctl/lyapunov.hpp"
#include "skidstack/io/csv.hpp"
#include "skidstack/nn/network.hpp"
#include "skidstack/rl/trainer.hpp"

namespace skidstack::sim {

GreedyPlanner::GreedyPlanner(rl::QTable::Loaded artifacts)
    : q_(std::move(artifacts.table)),
      weights_(artifacts.weights),
      limits_(artifacts.limits) {}

sup::Command GreedyPlanner::tick(const pose::PoseSample& measured, const GoalSpec& goal) {
    RobotState state;
    state.x = measured.x;
    state.y = measured.y;
    state.theta = measured.theta;
    state.v = command_.v;
    state.omega = command_.omega;

    const GoalFeatures f = goal_features(state, goal);
    const auto s = rl::discretize(f.distance, f.heading_error, state.v, state.omega,
                                  q_.spec());
    const auto [raw_av, raw_aw] = q_.grid().action(q_.best_action(s.flat));
    const rl::ShapedAction shaped = rl::shape_policy_action(
        raw_av, raw_aw, state, f, rl::Phase::eval, weights_, limits_);

    sup::Command next;
    next.v = saturate(command_.v + shaped.a_v * limits_.dt, limits_.v_min, limits_.v_max);
    next.omega = saturate(command_.omega + shaped.a_omega * limits_.dt, limits_.omega_min,
                          limits_.omega_max);
    return next;
}

void GreedyPlanner::follow(const sup::Command& executed) { command_ = executed; }

sup::Command GreedyPlanner::hold_command() {
    const double dv = std::abs(limits_.a_v_min) * limits_.dt;
    const double dw = std::abs(limits_.a_omega_min) * limits_.dt;
    sup::Command next;
    next.v = std::max(0.0, command_.v - dv);
    next.omega = (command_.omega > 0.0) ? std::max(0.0, command_.omega - dw)
                                        : std::min(0.0, command_.omega + dw);
    return next;
}

namespace {

namespace fs = std::filesystem;

struct WheelBank {
    std::array<act::WheelPlant, 4> plants;
    std::array<ctl::WheelLoopState, 4> loops;
    std::array<act::Disturbance, 4> disturbances;
    std::array<double, 4> refs{};
    std::array<double, 4> inputs{};
};

pose::PoseSample truth_sample(double t, const RobotState& s) {
    return pose::PoseSample{t, s.x, s.y, s.theta};
}

std::vector<std::string> telemetry_header() {
    std::vector<std::string> h = {"tick", "t",       "mode",   "x_true",  "y_true",
                                  "theta_true",     "x_meas", "y_meas",  "theta_meas",
                                  "E",    "O",      "cmd_v",  "cmd_omega", "goal_index"};
    for (int i = 0; i < 4; ++i) {
        const std::string n = std::to_string(i);
        h.push_back("vd_" + n);
        h.push_back("v_" + n);
        h.push_back("e_" + n);
        h.push_back("chi_" + n);
        h.push_back("u_" + n);
    }
    return h;
}

}  // namespace

SimOutputs run_scenario(const ScenarioConfig& raw_config, const std::string& out_dir) {
    ScenarioConfig config = raw_config;
    config.finalize_and_validate();
    fs::create_directories(out_dir);

    SimOutputs out;
    out.telemetry_path = (fs::path(out_dir) / "telemetry.csv").string();
    out.mode_log_path = (fs::path(out_dir) / "modes.csv").string();

    RunReport& report = out.report;
    report.scenario = config.name;
    report.mode = to_string(config.mode);
    report.terrain = to_string(config.terrain);
    report.seed = config.seed;

    const nn::NetworkModel model = nn::NetworkModel::load(config.model_path);

    WheelBank bank{
        {act::WheelPlant(config.plant), act::WheelPlant(config.plant),
         act::WheelPlant(config.plant), act::WheelPlant(config.plant)},
        {},
        {act::Disturbance(config.disturbance, config.plant, 0),
         act::Disturbance(config.disturbance, config.plant, 1),
         act::Disturbance(config.disturbance, config.plant, 2),
         act::Disturbance(config.disturbance, config.plant, 3)}};
    for (auto& loop : bank.loops) loop.chi_hat = config.chi0;

    io::CsvWriter telemetry(out.telemetry_path, telemetry_header());

    // ---- Step-response scenario: wheel loops only, fixed synthetic zone.
    if (config.mode == ScenarioMode::step) {
        ctl::SafetyZone zone;
        zone.radius = 10.0;
        zone.current = config.step_zone_ratio * zone.radius;

        const double dt = 0.05;
        const long n_ticks = static_cast<long>(std::llround(config.step_duration_s / dt));
        std::vector<double> ts;
        std::array<std::vector<double>, 4> traces;
        for (long k = 0; k < n_ticks; ++k) {
            const double t = static_cast<double>(k) * dt;
            for (int i = 0; i < 4; ++i) {
                bank.refs[static_cast<std::size_t>(i)] = config.step_ref;
                const double v_i = bank.plants[static_cast<std::size_t>(i)].speed();
                const double u_idm = model.forward(config.step_ref);
                const auto res = ctl::control_step(bank.loops[static_cast<std::size_t>(i)],
                                                   v_i, config.step_ref, u_idm, zone,
                                                   config.gains, dt);
                bank.inputs[static_cast<std::size_t>(i)] = res.u;
                const double d = bank.disturbances[static_cast<std::size_t>(i)].at(t, v_i);
                bank.plants[static_cast<std::size_t>(i)].step(res.u, d, dt);
            }
            ts.push_back(t);
            for (int i = 0; i < 4; ++i) {
                traces[static_cast<std::size_t>(i)].push_back(
                    bank.plants[static_cast<std::size_t>(i)].speed());
            }
            std::vector<double> row = {static_cast<double>(k), t, 0.0, 0.0, 0.0, 0.0,
                                       0.0, 0.0, 0.0, zone.current, zone.radius, 0.0,
                                       0.0, -1.0};
            for (int i = 0; i < 4; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                row.push_back(bank.refs[idx]);
                row.push_back(bank.plants[idx].speed());
                row.push_back(bank.loops[idx].tracking_error);
                row.push_back(bank.loops[idx].chi_hat);
                row.push_back(bank.inputs[idx]);
            }
            telemetry.row(row);
        }
        for (int i = 0; i < 4; ++i) {
            report.wheel_metrics.push_back(
                step_metrics(ts, config.step_ref, traces[static_cast<std::size_t>(i)]));
        }
        report.success = true;
        report.ticks = n_ticks;
        report.sim_time_s = static_cast<double>(n_ticks) * dt;
        report.finalize_rmse();
        return out;
    }

    // ---- Mission scenario.
    auto artifacts = rl::QTable::load(config.qtable_path);
    GreedyPlanner planner(std::move(artifacts));
    const MotionLimits& lim = planner.limits();
    const double dt = lim.dt;

    auto provider = pose::make_provider(config.pose_mode, config.noise, config.pose_log_path);
    sup::FaultInjector injector(config.fault);

    sup::SupervisorConfig sup_cfg;
    sup_cfg.goal_tol = config.goal_tol;
    sup::Supervisor supervisor(sup_cfg, lim);

    sup::GoalSequencer sequencer(config.goals, config.zeta);

    RobotState truth;
    truth.theta = wrap_pi(config.start_theta);

    const long segment_timeout_ticks =
        static_cast<long>(std::llround(config.segment_timeout_s / dt));
    const long tick_cap =
        segment_timeout_ticks * static_cast<long>(config.goals.size() + 3);

    long tick = 0;
    long segment_start_tick = 0;
    long stop_tail_ticks = 0;
    bool mission_complete = config.goals.empty();
    bool rts_zone_set = false;
    double rts_anchor_x = 0.0, rts_anchor_y = 0.0;
    ctl::SafetyZone zone = sequencer.done()
                               ? ctl::SafetyZone{0.0, config.zeta, 0, 0, 0, 0}
                               : sequencer.zone(truth_sample(0.0, truth));

    if (mission_complete && !config.fault.scheduled()) {
        report.success = true;
        report.finalize_rmse();
        return out;
    }

    for (; tick < tick_cap; ++tick) {
        const double t_now = static_cast<double>(tick) * dt;
        const pose::PoseSample truth_pose = truth_sample(t_now, truth);

        const auto raw_meas = provider->sample(t_now, truth_pose);
        if (!raw_meas) {
            report.success = false;
            report.failure_reason = "pose stream exhausted at t=" + std::to_string(t_now);
            break;
        }
        const pose::PoseSample meas = injector.apply(*raw_meas);

        // Zone from the measured channel (the detection path).
        if (!supervisor.latched()) {
            zone = sequencer.zone(meas);
            if (zone.violated() && !report.violation_tick) {
                report.violation_tick = tick;
            }
        }

        // Goal progression on the measured channel.
        if (!supervisor.latched() && !sequencer.done() &&
            sequencer.distance_to_goal(meas) <= config.goal_tol) {
            const auto& goal = sequencer.current_goal();
            GoalResult g;
            g.index = sequencer.current_index() + 1;
            g.goal_x = goal.x_g;
            g.goal_y = goal.y_g;
            g.final_true_x = truth.x;
            g.final_true_y = truth.y;
            g.final_meas_x = meas.x;
            g.final_meas_y = meas.y;
            g.err_true = std::hypot(goal.x_g - truth.x, goal.y_g - truth.y);
            g.err_meas = std::hypot(goal.x_g - meas.x, goal.y_g - meas.y);
            g.t_reached = t_now;
            report.goals.push_back(g);

            supervisor.notify_goal_reached(tick, g.index);
            injector.on_goal_reached(g.index);
            sequencer.advance(meas);
            segment_start_tick = tick;
            if (sequencer.done()) {
                mission_complete = true;
                if (!config.fault.scheduled()) break;  // mission ends cleanly
            }
        }

        // Planner command (or hold-to-stop once the sequence is exhausted).
        sup::Command planner_cmd;
        if (!supervisor.latched()) {
            planner_cmd = sequencer.done()
                              ? planner.hold_command()
                              : planner.tick(meas, sequencer.current_goal());
        }

        const auto decision = supervisor.supervise(planner_cmd, zone, truth_pose, tick);
        if (decision.mode == sup::Mode::braking && !report.braking_tick) {
            report.braking_tick = tick;
        }
        if (decision.mode == sup::Mode::return_to_safe && !rts_zone_set) {
            rts_anchor_x = truth.x;
            rts_anchor_y = truth.y;
            rts_zone_set = true;
        }
        planner.follow(decision.cmd);

        // Controller-side zone: the recovery leg runs on a fresh zone built
        // from the trusted channel toward the safe point.
        ctl::SafetyZone ctl_zone = zone;
        if (rts_zone_set) {
            ctl_zone = ctl::update_safety_zone(truth.x - rts_anchor_x,
                                               truth.y - rts_anchor_y,
                                               sup_cfg.safe_x - rts_anchor_x,
                                               sup_cfg.safe_y - rts_anchor_y, config.zeta);
        }

        bank.refs = ctl::allocate_wheel_refs(decision.cmd.v, decision.cmd.omega,
                                             config.geometry);
        for (int i = 0; i < 4; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const double v_i = bank.plants[idx].speed();
            const double u_idm = model.forward(bank.refs[idx]);
            const auto res = ctl::control_step(bank.loops[idx], v_i, bank.refs[idx], u_idm,
                                               ctl_zone, config.gains, dt);
            bank.inputs[idx] = res.u;
            const double d = bank.disturbances[idx].at(t_now, v_i);
            bank.plants[idx].step(res.u, d, dt);
        }

        const ctl::BodyVelocity body = ctl::body_from_wheels(
            {bank.plants[0].speed(), bank.plants[1].speed(), bank.plants[2].speed(),
             bank.plants[3].speed()},
            config.geometry);
        truth.v = body.v;
        truth.omega = body.omega;
        truth.x += body.v * std::cos(truth.theta) * dt;
        truth.y += body.v * std::sin(truth.theta) * dt;
        truth.theta = wrap_pi(truth.theta + body.omega * dt);

        std::vector<double> row = {static_cast<double>(tick),
                                   t_now,
                                   static_cast<double>(static_cast<int>(decision.mode)),
                                   truth.x,
                                   truth.y,
                                   truth.theta,
                                   meas.x,
                                   meas.y,
                                   meas.theta,
                                   zone.current,
                                   zone.radius,
                                   decision.cmd.v,
                                   decision.cmd.omega,
                                   static_cast<double>(sequencer.done()
                                                           ? -1
                                                           : sequencer.current_index())};
        for (int i = 0; i < 4; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            row.push_back(bank.refs[idx]);
            row.push_back(bank.plants[idx].speed());
            row.push_back(bank.loops[idx].tracking_error);
            row.push_back(bank.loops[idx].chi_hat);
            row.push_back(bank.inputs[idx]);
        }
        telemetry.row(row);

        // Post-step exit checks.
        if (supervisor.mode() == sup::Mode::stopped) {
            if (++stop_tail_ticks >= 100 || std::abs(truth.v) < 1e-4) {
                GoalResult g;
                g.index = static_cast<int>(report.goals.size()) + 1;
                g.goal_x = sup_cfg.safe_x;
                g.goal_y = sup_cfg.safe_y;
                g.final_true_x = truth.x;
                g.final_true_y = truth.y;
                g.final_meas_x = truth.x;  // recovery reports the trusted channel
                g.final_meas_y = truth.y;
                g.err_true = std::hypot(truth.x - sup_cfg.safe_x, truth.y - sup_cfg.safe_y);
                g.err_meas = g.err_true;
                g.t_reached = t_now;
                report.safe_return = g;
                break;
            }
        }
        if (!supervisor.latched() && !sequencer.done() &&
            tick - segment_start_tick > segment_timeout_ticks) {
            report.success = false;
            report.failure_reason =
                "segment timeout at goal " + std::to_string(sequencer.current_index() + 1);
            break;
        }
    }

    report.ticks = tick;
    report.sim_time_s = static_cast<double>(tick) * dt;

    if (report.failure_reason.empty()) {
        const bool goals_ok = report.goals.size() == config.goals.size();
        if (config.fault.scheduled()) {
            const bool settled =
                report.safe_return && report.safe_return->err_true <= config.goal_tol;
            report.success = goals_ok && settled;
            if (!settled) report.failure_reason = "recovery did not settle at the safe point";
        } else {
            report.success = goals_ok;
            if (!goals_ok) report.failure_reason = "tick cap reached before all goals";
        }
    }
    report.finalize_rmse();
    supervisor.write_transition_log(out.mode_log_path);
    return out;
}

}  // namespace skidstack::sim
