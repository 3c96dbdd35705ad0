// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Pipeline CLI: train the motion planner, generate actuator data, train the
// inverse-dynamics network, run closed-loop scenarios and post-process
// telemetry into metrics and plot-ready data.
//
// Exit codes: 0 success, 2 validation error (bad config or artifacts),
// 3 safety/mission failure, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skidstack/act/dataset.hpp"
#include "skidstack/io/csv.hpp"
#include "skidstack/io/ini.hpp"
#include "skidstack/nn/fit.hpp"
#include "skidstack/rl/trainer.hpp"
#include "skidstack/sim/closed_loop.hpp"
#include "skidstack/sim/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace skidstack;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSafety = 3;

struct CommonArgs {
    std::string config;
    std::string out_dir = "out";
    long seed = -1;  ///< -1 keeps the config's seed
};

MotionLimits limits_from_ini(const io::Ini& ini) {
    MotionLimits lim;
    lim.v_min = ini.get_double("limits", "v_min", lim.v_min);
    lim.v_max = ini.get_double("limits", "v_max", lim.v_max);
    lim.omega_min = ini.get_double("limits", "omega_min", lim.omega_min);
    lim.omega_max = ini.get_double("limits", "omega_max", lim.omega_max);
    lim.a_v_min = ini.get_double("limits", "a_v_min", lim.a_v_min);
    lim.a_v_max = ini.get_double("limits", "a_v_max", lim.a_v_max);
    lim.a_omega_min = ini.get_double("limits", "a_omega_min", lim.a_omega_min);
    lim.a_omega_max = ini.get_double("limits", "a_omega_max", lim.a_omega_max);
    lim.dt = ini.get_double("limits", "dt", lim.dt);
    return lim;
}

rl::RewardWeights weights_from_ini(const io::Ini& ini) {
    rl::RewardWeights w;
    w.k_d = ini.get_double("reward", "k_d", w.k_d);
    w.k_theta = ini.get_double("reward", "k_theta", w.k_theta);
    w.k_v = ini.get_double("reward", "k_v", w.k_v);
    w.k_lat = ini.get_double("reward", "k_lat", w.k_lat);
    w.k_omega = ini.get_double("reward", "k_omega", w.k_omega);
    w.k_av = ini.get_double("reward", "k_av", w.k_av);
    w.k_aomega = ini.get_double("reward", "k_aomega", w.k_aomega);
    w.k_step = ini.get_double("reward", "k_step", w.k_step);
    w.k_timeout = ini.get_double("reward", "k_timeout", w.k_timeout);
    w.k_ws = ini.get_double("reward", "k_ws", w.k_ws);
    w.k_wflip = ini.get_double("reward", "k_wflip", w.k_wflip);
    w.k_head_inc = ini.get_double("reward", "k_head_inc", w.k_head_inc);
    w.k_head_stall = ini.get_double("reward", "k_head_stall", w.k_head_stall);
    w.delta_e_head = ini.get_double("reward", "delta_e_head", w.delta_e_head);
    w.k_wstop = ini.get_double("reward", "k_wstop", w.k_wstop);
    w.e_pad = ini.get_double("reward", "e_pad", w.e_pad);
    w.k_wsign = ini.get_double("reward", "k_wsign", w.k_wsign);
    w.e_db = ini.get_double("reward", "e_db", w.e_db);
    w.omega_db = ini.get_double("reward", "omega_db", w.omega_db);
    w.e_lock = ini.get_double("reward", "e_lock", w.e_lock);
    w.d_lock = ini.get_double("reward", "d_lock", w.d_lock);
    return w;
}

int cmd_train_planner(const CommonArgs& args, const std::string& rule) {
    const auto ini = io::Ini::load(args.config);
    Workspace ws;
    ws.x_lo = ini.get_double("workspace", "x_lo", -25.0);
    ws.x_hi = ini.get_double("workspace", "x_hi", 25.0);
    ws.y_lo = ini.get_double("workspace", "y_lo", -25.0);
    ws.y_hi = ini.get_double("workspace", "y_hi", 25.0);
    const MotionLimits lim = limits_from_ini(ini);
    const rl::RewardWeights w = weights_from_ini(ini);

    auto spec = rl::DiscretizerSpec::for_workspace(
        ws, lim, ini.get_double("discretizer", "distance_resolution", 1.0),
        static_cast<int>(ini.get_int("discretizer", "n_theta", 24)),
        static_cast<int>(ini.get_int("discretizer", "n_v", 4)),
        static_cast<int>(ini.get_int("discretizer", "n_omega", 5)));
    if (ini.has("discretizer", "n_d")) {
        spec.n_d = static_cast<int>(ini.get_int("discretizer", "n_d", spec.n_d));
    }
    const auto grid = rl::ActionGrid::from_limits(
        lim, ini.get_double("discretizer", "a_v_step", 0.10),
        ini.get_double("discretizer", "a_omega_step", 0.02));

    rl::TrainConfig cfg;
    cfg.alpha = ini.get_double("train", "alpha", 0.10);
    cfg.gamma = ini.get_double("train", "gamma", 0.95);
    cfg.episodes = static_cast<int>(ini.get_int("train", "episodes", 30000));
    cfg.eval_episodes = static_cast<int>(ini.get_int("train", "eval_episodes", 1000));
    cfg.eps0 = ini.get_double("train", "eps0", 1.0);
    cfg.eps_final = ini.get_double("train", "eps_final", 1e-3);
    cfg.timeout_steps = static_cast<int>(ini.get_int("train", "timeout_steps", 1200));
    cfg.eval_timeout_steps =
        static_cast<int>(ini.get_int("train", "eval_timeout_steps", 0));
    cfg.start_min_dist = ini.get_double("train", "start_min_dist", 0.20);
    cfg.goal_margin = ini.get_double("train", "goal_margin", 2.0);
    cfg.mixed_fraction = ini.get_double("train", "mixed_fraction", 0.35);
    const std::string sampling = ini.get_string("train", "goal_sampling", "mixed");
    cfg.train_goal_sampling =
        sampling == "uniform" ? rl::GoalSampling::uniform : rl::GoalSampling::mixed;
    cfg.seed = static_cast<std::uint64_t>(ini.get_int("train", "seed", 1));
    cfg.rule = rl::update_rule_from_string(
        rule.empty() ? ini.get_string("train", "rule", "qlearning") : rule);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);

    std::printf("training %s: |S| = %lld, |A| = %d, %d episodes\n",
                rl::to_string(cfg.rule), static_cast<long long>(spec.state_count()),
                grid.size(), cfg.episodes);
    auto result = rl::train(ws, lim, spec, grid, w, cfg);

    fs::create_directories(args.out_dir);
    const auto qtable_path = (fs::path(args.out_dir) / "qtable.json").string();
    const auto curve_path = (fs::path(args.out_dir) / "learning_curve.csv").string();
    result.q.save(qtable_path, w, lim, cfg);
    rl::write_learning_curve_csv(curve_path, result.curve);

    rl::PlannerEnv env(ws, lim, spec, grid, w);
    const auto eval =
        rl::evaluate_greedy(env, result.q, cfg, cfg.eval_episodes, cfg.seed + 1);
    json summary{{"rule", rl::to_string(cfg.rule)},
                 {"episodes", cfg.episodes},
                 {"eval_episodes", cfg.eval_episodes},
                 {"success_rate", eval.success_rate},
                 {"mean_final_distance", eval.mean_final_distance},
                 {"mean_steps", eval.mean_steps},
                 {"qtable", qtable_path}};
    std::ofstream((fs::path(args.out_dir) / "train_summary.json").string())
        << summary.dump(2) << '\n';
    std::printf("greedy eval: success %.1f%%, mean final distance %.3f m\n",
                100.0 * eval.success_rate, eval.mean_final_distance);
    return 0;
}

int cmd_gen_actuator_data(const CommonArgs& args) {
    const auto ini = io::Ini::load(args.config);
    act::PlantParams plant;
    plant.inertia = ini.get_double("plant", "inertia", plant.inertia);
    plant.c1 = ini.get_double("plant", "c1", plant.c1);
    plant.c2 = ini.get_double("plant", "c2", plant.c2);
    plant.c3 = ini.get_double("plant", "c3", plant.c3);
    plant.v_s = ini.get_double("plant", "v_s", plant.v_s);

    const auto excitation =
        act::excitation_from_string(ini.get_string("dataset", "excitation", "ramps"));
    const double duration = ini.get_double("dataset", "duration_s", 300.0);
    const double dt = ini.get_double("dataset", "dt", 0.01);
    const double v_lo = ini.get_double("dataset", "v_lo", -0.4);
    const double v_hi = ini.get_double("dataset", "v_hi", 0.4);
    auto seed = static_cast<std::uint64_t>(ini.get_int("dataset", "seed", 1));
    if (args.seed >= 0) seed = static_cast<std::uint64_t>(args.seed);

    const auto ds = act::generate_dataset(excitation, plant, duration, dt, v_lo, v_hi, seed);
    fs::create_directories(args.out_dir);
    const auto path = (fs::path(args.out_dir) / "actuator_dataset.csv").string();
    ds.save(path, plant);
    std::printf("dataset: %zu samples, coverage %.1f%% of 0.01 m/s bins -> %s\n", ds.size(),
                100.0 * ds.coverage(0.01), path.c_str());
    return 0;
}

int cmd_train_dnn(const CommonArgs& args, const std::string& dataset_path) {
    const auto ini = io::Ini::load(args.config);
    const auto ds = act::ActuatorDataset::load(dataset_path);

    nn::SplitSpec split;
    split.train_ratio = ini.get_double("split", "train_ratio", 0.34);
    split.val_ratio = ini.get_double("split", "val_ratio", 0.33);
    split.test_ratio = ini.get_double("split", "test_ratio", 0.33);
    split.seed = static_cast<std::uint64_t>(ini.get_int("split", "seed", 1));

    nn::FitOptions opt;
    if (ini.has("dnn", "hidden_sizes")) {
        const auto sizes = io::Ini::parse_number_list(*ini.get("dnn", "hidden_sizes"));
        opt.hidden_sizes.clear();
        for (double s : sizes) opt.hidden_sizes.push_back(static_cast<int>(s));
    }
    opt.goal = ini.get_double("dnn", "goal", 1e-6);
    opt.min_gradient = ini.get_double("dnn", "min_gradient", 1e-10);
    opt.max_epochs = static_cast<int>(ini.get_int("dnn", "max_epochs", 500));
    opt.patience = static_cast<int>(ini.get_int("dnn", "patience", 6));
    opt.init_seed = static_cast<std::uint64_t>(ini.get_int("dnn", "init_seed", 1));
    if (args.seed >= 0) {
        opt.init_seed = static_cast<std::uint64_t>(args.seed);
        split.seed = static_cast<std::uint64_t>(args.seed);
    }

    std::printf("training inverse model on %zu samples\n", ds.size());
    auto res = nn::fit(ds, split, opt);
    fs::create_directories(args.out_dir);
    const auto model_path = (fs::path(args.out_dir) / "inverse_model.json").string();
    res.model.save(model_path);
    res.report.save((fs::path(args.out_dir) / "train_report.json").string());
    std::printf("stop: %s after %zu epochs; test MSE %.3e (normalized), %.3e (raw)\n",
                nn::to_string(res.report.cause), res.report.val_loss.size(),
                res.report.test_mse, res.report.test_mse_denorm);
    return 0;
}

int cmd_simulate(const CommonArgs& args, const std::string& terrain) {
    auto cfg = sim::ScenarioConfig::load(args.config);
    if (!terrain.empty()) cfg.terrain = sim::terrain_from_string(terrain);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);

    const auto out = sim::run_scenario(cfg, args.out_dir);
    out.report.save((fs::path(args.out_dir) / "run_report.json").string());
    std::printf("%s: %s (%ld ticks, %.1f s simulated)\n", cfg.name.c_str(),
                out.report.success ? "success" : "FAILURE", out.report.ticks,
                out.report.sim_time_s);
    for (const auto& g : out.report.goals) {
        std::printf("  goal %d (%.3f, %.3f): final (%.3f, %.3f), error %.4f m\n", g.index,
                    g.goal_x, g.goal_y, g.final_true_x, g.final_true_y, g.err_true);
    }
    if (out.report.safe_return) {
        const auto& s = *out.report.safe_return;
        std::printf("  safe area: final (%.3f, %.3f), error %.4f m\n", s.final_true_x,
                    s.final_true_y, s.err_true);
    }
    if (!out.report.goals.empty() || out.report.safe_return) {
        std::printf("  position RMSE %.4f m\n", out.report.rmse_true);
    }
    if (!out.report.success) {
        std::fprintf(stderr, "failure: %s\n", out.report.failure_reason.c_str());
        return kExitSafety;
    }
    return 0;
}

int cmd_report(const CommonArgs& args, const std::string& telemetry_path) {
    const auto t = io::read_csv(telemetry_path);
    fs::create_directories(args.out_dir);

    const auto time = t.numeric_column("t");
    {
        io::CsvWriter traj((fs::path(args.out_dir) / "trajectory.csv").string(),
                           {"t", "x_true", "y_true", "x_meas", "y_meas"});
        const auto xt = t.numeric_column("x_true");
        const auto yt = t.numeric_column("y_true");
        const auto xm = t.numeric_column("x_meas");
        const auto ym = t.numeric_column("y_meas");
        for (std::size_t k = 0; k < time.size(); ++k) {
            traj.row({time[k], xt[k], yt[k], xm[k], ym[k]});
        }
    }
    {
        std::vector<std::string> header{"t"};
        for (int i = 0; i < 4; ++i) {
            header.push_back("vd_" + std::to_string(i));
            header.push_back("v_" + std::to_string(i));
        }
        io::CsvWriter tracking((fs::path(args.out_dir) / "wheel_tracking.csv").string(),
                               header);
        std::vector<std::vector<double>> cols;
        for (int i = 0; i < 4; ++i) {
            cols.push_back(t.numeric_column("vd_" + std::to_string(i)));
            cols.push_back(t.numeric_column("v_" + std::to_string(i)));
        }
        for (std::size_t k = 0; k < time.size(); ++k) {
            std::vector<double> row{time[k]};
            for (const auto& c : cols) row.push_back(c[k]);
            tracking.row(row);
        }
    }

    // Step metrics on the first constant-reference segment of each wheel.
    json metrics = json::array();
    for (int i = 0; i < 4; ++i) {
        const auto vd = t.numeric_column("vd_" + std::to_string(i));
        const auto v = t.numeric_column("v_" + std::to_string(i));
        std::size_t seg_start = 0, seg_end = 0;
        for (std::size_t k = 1; k <= vd.size(); ++k) {
            if (k == vd.size() || vd[k] != vd[seg_start]) {
                if (k - seg_start >= 20 && vd[seg_start] != 0.0) {
                    seg_end = k;
                    break;
                }
                seg_start = k;
            }
        }
        if (seg_end > seg_start) {
            const std::span<const double> ts(&time[seg_start], seg_end - seg_start);
            const std::span<const double> vs(&v[seg_start], seg_end - seg_start);
            const auto m = sim::step_metrics(ts, vd[seg_start], vs);
            metrics.push_back(json{{"wheel", i},
                                   {"reference", vd[seg_start]},
                                   {"peak_time", m.peak_time},
                                   {"overshoot", m.overshoot},
                                   {"settling_time", m.settling_time},
                                   {"steady_state_error", m.steady_state_error}});
            std::printf(
                "wheel %d @ %.3f m/s: peak %.2f s, overshoot %.4f, settling %.2f s, "
                "sse %.4f\n",
                i, vd[seg_start], m.peak_time, m.overshoot, m.settling_time,
                m.steady_state_error);
        }
    }
    std::ofstream((fs::path(args.out_dir) / "metrics.json").string())
        << metrics.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical goal-reaching control stack for skid-steered robots"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string rule, terrain, dataset_path, telemetry_path;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config) {
            cmd->add_option("--config", args.config, "config file")->required();
        }
        cmd->add_option("--out-dir", args.out_dir, "output directory");
        cmd->add_option("--seed", args.seed, "seed override");
    };

    auto* train_planner = app.add_subcommand("train-planner", "train the RL motion planner");
    add_common(train_planner);
    train_planner->add_option("--rule", rule, "qlearning or sarsa");

    auto* gen_data = app.add_subcommand("gen-actuator-data", "generate the actuator dataset");
    add_common(gen_data);

    auto* train_dnn = app.add_subcommand("train-dnn", "fit the inverse dynamics network");
    add_common(train_dnn);
    train_dnn->add_option("--dataset", dataset_path, "actuator dataset csv")->required();

    auto* simulate = app.add_subcommand("simulate", "run a closed-loop scenario");
    add_common(simulate);
    simulate->add_option("--terrain", terrain, "asphalt or soft (preset override)");

    auto* report = app.add_subcommand("report", "metrics and plot data from telemetry");
    add_common(report, false);
    report->add_option("--telemetry", telemetry_path, "telemetry csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_planner->parsed()) return cmd_train_planner(args, rule);
        if (gen_data->parsed()) return cmd_gen_actuator_data(args);
        if (train_dnn->parsed()) return cmd_train_dnn(args, dataset_path);
        if (simulate->parsed()) return cmd_simulate(args, terrain);
        if (report->parsed()) return cmd_report(args, telemetry_path);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 1;
}
