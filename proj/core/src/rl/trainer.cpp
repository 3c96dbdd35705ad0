// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/rl/trainer.hpp"

#include <cmath>
#include <stdexcept>

#include "skidstack/io/csv.hpp"

namespace skidstack::rl {

int select_action(const QTable& q, std::int64_t s, double eps, Rng& rng) {
    if (eps > 0.0 && rng.uniform() < eps) {
        return rng.uniform_int(q.n_actions());
    }
    return q.best_action(s);
}

ShapedAction shape_policy_action(double raw_a_v, double raw_a_omega,
                                 const RobotState& state, const GoalFeatures& features,
                                 Phase phase, const RewardWeights& w,
                                 const MotionLimits& lim) {
    ShapedAction out{raw_a_v, raw_a_omega};
    const double abs_e = std::abs(features.heading_error);

    // Hysteresis: well aligned and barely rotating -> no angular command.
    if (abs_e < w.e_db && std::abs(state.omega) < w.omega_db) {
        out.a_omega = 0.0;
    }

    // Zero-lock inside the goal neighborhood.
    if (abs_e <= w.e_lock && features.distance <= w.d_lock) {
        const double brake = -state.omega / lim.dt;  // cancels omega in one step
        out.a_omega = (phase == Phase::eval)
                          ? brake
                          : saturate(brake, lim.a_omega_min, lim.a_omega_max);
    }
    return out;
}

void td_update(QTable& q, const TransitionRecord& rec, const TrainConfig& cfg) {
    double bootstrap = 0.0;
    if (!rec.terminal) {
        if (cfg.rule == UpdateRule::q_learning) {
            bootstrap = q.max_value(rec.s_next);
        } else {
            if (rec.a_next < 0) {
                throw std::invalid_argument(
                    "td_update: SARSA record missing next action on a non-terminal "
                    "transition");
            }
            bootstrap = q.at(rec.s_next, rec.a_next);
        }
    }
    const double delta = rec.r + cfg.gamma * bootstrap - q.at(rec.s, rec.a);
    q.at(rec.s, rec.a) += cfg.alpha * delta;
}

PlannerEnv::PlannerEnv(Workspace ws, MotionLimits limits, DiscretizerSpec spec,
                       ActionGrid grid, RewardWeights weights)
    : workspace_(ws),
      limits_(limits),
      spec_(spec),
      grid_(std::move(grid)),
      weights_(weights) {
    spec_.validate();
}

void PlannerEnv::reset(Rng& rng, double min_dist, double goal_margin,
                       GoalSampling sampling, double mixed_fraction) {
    GoalSpec goal;
    goal.goal_tol = goal_.goal_tol;  // tolerance is fixed per environment
    RobotState start;
    const double gx_lo = workspace_.x_lo + goal_margin;
    const double gx_hi = workspace_.x_hi - goal_margin;
    const double gy_lo = workspace_.y_lo + goal_margin;
    const double gy_hi = workspace_.y_hi - goal_margin;
    const double d_span = std::hypot(gx_hi - gx_lo, gy_hi - gy_lo);
    do {
        start.x = rng.uniform(workspace_.x_lo, workspace_.x_hi);
        start.y = rng.uniform(workspace_.y_lo, workspace_.y_hi);
        start.theta = rng.uniform(-kPi, kPi);
        start.v = 0.0;
        start.omega = 0.0;
        if (sampling == GoalSampling::mixed && rng.uniform() < mixed_fraction) {
            // Log-uniform distance, uniform bearing, rejected when the draw
            // leaves the inset goal box.
            const double d = std::exp(
                rng.uniform(std::log(std::max(min_dist, 0.25)), std::log(d_span)));
            const double bearing = rng.uniform(-kPi, kPi);
            goal.x_g = start.x + d * std::cos(bearing);
            goal.y_g = start.y + d * std::sin(bearing);
        } else {
            goal.x_g = rng.uniform(gx_lo, gx_hi);
            goal.y_g = rng.uniform(gy_lo, gy_hi);
        }
    } while (goal.x_g < gx_lo || goal.x_g > gx_hi || goal.y_g < gy_lo ||
             goal.y_g > gy_hi ||
             std::hypot(goal.x_g - start.x, goal.y_g - start.y) < min_dist);
    reset_to(start, goal);
}

void PlannerEnv::reset_to(const RobotState& start, const GoalSpec& goal) {
    state_ = start;
    goal_ = goal;
    features_ = goal_features(state_, goal_);
    const double e0 = features_.heading_error;
    sign_e0_ = (e0 > 0.0) ? 1.0 : (e0 < 0.0 ? -1.0 : 0.0);
}

PlannerEnv::StepResult PlannerEnv::step(double a_v, double a_omega, int step_index,
                                        int timeout_steps) {
    const RobotState next = step_unicycle(state_, a_v, a_omega, limits_);
    const GoalFeatures f_next = goal_features(next, goal_);

    TerminalCause cause = TerminalCause::none;
    if (f_next.distance <= goal_.goal_tol) {
        cause = TerminalCause::goal;
    } else if (!in_workspace(next, workspace_)) {
        cause = TerminalCause::out_of_workspace;
    } else if (step_index + 1 >= timeout_steps) {
        cause = TerminalCause::timeout;
    }

    ShapeTransition st;
    st.d_t = features_.distance;
    st.d_next = f_next.distance;
    st.e_t = features_.heading_error;
    st.e_next = f_next.heading_error;
    st.v_next = next.v;
    st.omega_t = state_.omega;
    st.omega_next = next.omega;
    st.a_v = a_v;
    st.a_omega = a_omega;
    st.sign_e0 = sign_e0_;
    st.goal_tol = goal_.goal_tol;

    const double reward = task_reward(features_.distance, f_next.distance, cause,
                                      f_next.distance, weights_) +
                          shape_reward(st, weights_, limits_);

    state_ = next;
    features_ = f_next;
    return StepResult{reward, cause};
}

EpisodeStats run_episode(PlannerEnv& env, QTable& q, const TrainConfig& cfg, Phase phase,
                         double eps, Rng& rng, std::vector<TransitionRecord>* records) {
    EpisodeStats stats;
    const bool learning = (phase == Phase::train);

    std::int64_t s = env.observe().flat;
    int a = select_action(q, s, learning ? eps : 0.0, rng);

    for (int t = 0; t < cfg.timeout_steps; ++t) {
        const auto [raw_av, raw_aw] = env.grid().action(a);
        const ShapedAction applied = shape_policy_action(
            raw_av, raw_aw, env.state(), env.features(), phase, env.weights(),
            env.limits());
        const auto res = env.step(applied.a_v, applied.a_omega, t, cfg.timeout_steps);
        const std::int64_t s_next = env.observe().flat;
        stats.total_reward += res.reward;
        stats.steps = t + 1;

        TransitionRecord rec;
        rec.s = s;
        rec.a = a;
        rec.r = res.reward;
        rec.s_next = s_next;
        rec.terminal = (res.cause != TerminalCause::none);
        rec.cause = res.cause;

        if (rec.terminal) {
            if (learning) td_update(q, rec, cfg);
            if (records) records->push_back(rec);
            stats.cause = res.cause;
            break;
        }

        if (learning && cfg.rule == UpdateRule::sarsa) {
            rec.a_next = select_action(q, s_next, eps, rng);
            td_update(q, rec, cfg);
            a = rec.a_next;
        } else {
            if (learning) td_update(q, rec, cfg);
            a = select_action(q, s_next, learning ? eps : 0.0, rng);
        }
        if (records) records->push_back(rec);
        s = s_next;
    }
    stats.final_distance = env.features().distance;
    return stats;
}

TrainResult train(const Workspace& ws, const MotionLimits& limits,
                  const DiscretizerSpec& spec, const ActionGrid& grid,
                  const RewardWeights& weights, const TrainConfig& cfg) {
    cfg.validate();
    PlannerEnv env(ws, limits, spec, grid, weights);
    TrainResult result{QTable(spec, grid), {}};
    result.curve.reserve(static_cast<std::size_t>(cfg.episodes));
    Rng rng(cfg.seed);

    for (int ep = 0; ep < cfg.episodes; ++ep) {
        env.reset(rng, cfg.start_min_dist, cfg.goal_margin, cfg.train_goal_sampling,
                  cfg.mixed_fraction);
        const double eps = epsilon_at(cfg, ep);
        const EpisodeStats stats =
            run_episode(env, result.q, cfg, Phase::train, eps, rng);
        result.curve.push_back(CurveRow{ep, stats.total_reward, stats.final_distance,
                                        stats.cause == TerminalCause::goal});
    }
    return result;
}

EvalResult evaluate_greedy(PlannerEnv& env, const QTable& q, const TrainConfig& cfg,
                           int n_episodes, std::uint64_t seed) {
    Rng rng(seed);
    EvalResult out;
    TrainConfig eval_cfg = cfg;
    eval_cfg.timeout_steps = cfg.eval_timeout();
    // Greedy evaluation never writes; the const_cast is confined here.
    QTable& q_mut = const_cast<QTable&>(q);
    for (int i = 0; i < n_episodes; ++i) {
        env.reset(rng, cfg.start_min_dist, cfg.goal_margin);
        const EpisodeStats stats =
            run_episode(env, q_mut, eval_cfg, Phase::eval, 0.0, rng);
        out.success_rate += (stats.cause == TerminalCause::goal) ? 1.0 : 0.0;
        out.mean_final_distance += stats.final_distance;
        out.mean_steps += stats.steps;
    }
    if (n_episodes > 0) {
        out.success_rate /= n_episodes;
        out.mean_final_distance /= n_episodes;
        out.mean_steps /= n_episodes;
    }
    return out;
}

void write_learning_curve_csv(const std::string& path,
                              const std::vector<CurveRow>& curve) {
    io::CsvWriter csv(path, {"episode", "return", "final_distance", "success"});
    for (const auto& row : curve) {
        csv.row({static_cast<double>(row.episode), row.episode_return,
                 row.final_distance, row.success ? 1.0 : 0.0});
    }
}

}  // namespace skidstack::rl
