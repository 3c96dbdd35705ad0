// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Episode generation over the unicycle environment, epsilon-greedy action
// selection with hysteresis and zero-lock policy shaping, Q-learning and
// SARSA updates, and the training/evaluation drivers.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skidstack/geometry.hpp"
#include "skidstack/rl/discretizer.hpp"
#include "skidstack/rl/qtable.hpp"
#include "skidstack/rl/reward.hpp"
#include "skidstack/rl/train_config.hpp"
#include "skidstack/rng.hpp"

namespace skidstack::rl {

enum class Phase { train, eval };

struct TransitionRecord {
    std::int64_t s = 0;
    int a = 0;
    double r = 0.0;
    std::int64_t s_next = 0;
    int a_next = -1;  ///< next behavior action; -1 when absent (terminal / Q-learning)
    bool terminal = false;
    TerminalCause cause = TerminalCause::none;
};

/// Epsilon-greedy selection over one Q row. Ties break to the lowest index.
[[nodiscard]] int select_action(const QTable& q, std::int64_t s, double eps, Rng& rng);

struct ShapedAction {
    double a_v = 0.0;
    double a_omega = 0.0;
};

/// Hysteresis clamp and goal-neighborhood zero-lock applied on top of a raw
/// grid action. Training brakes the spin within acceleration limits; at
/// evaluation the clamp cancels the angular velocity in one step.
[[nodiscard]] ShapedAction shape_policy_action(double raw_a_v, double raw_a_omega,
                                               const RobotState& state,
                                               const GoalFeatures& features, Phase phase,
                                               const RewardWeights& w,
                                               const MotionLimits& lim);

/// One TD update per Eq.-style rules: Q-learning bootstraps on the row max,
/// SARSA on the recorded next action. Terminal transitions bootstrap zero.
void td_update(QTable& q, const TransitionRecord& rec, const TrainConfig& cfg);

/// Goal-conditioned unicycle environment over a rectangular workspace.
class PlannerEnv {
public:
    PlannerEnv(Workspace ws, MotionLimits limits, DiscretizerSpec spec, ActionGrid grid,
               RewardWeights weights);

    /// Samples a fresh start pose (uniform position and heading, zero
    /// velocities) and a goal inset from the walls, re-drawing until the
    /// start-to-goal distance is at least min_dist. The mixed mode draws
    /// half the goals uniformly and half at a log-uniform distance from the
    /// start, which keeps the near-goal state bins populated.
    void reset(Rng& rng, double min_dist, double goal_margin,
               GoalSampling sampling = GoalSampling::uniform,
               double mixed_fraction = 0.5);

    /// Deterministic reset used by targeted tests and scenarios.
    void reset_to(const RobotState& start, const GoalSpec& goal);

    struct StepResult {
        double reward = 0.0;
        TerminalCause cause = TerminalCause::none;
    };
    /// Applies the given accelerations, advances the state and returns the
    /// reward of the transition. step_index counts from 0 within the episode.
    StepResult step(double a_v, double a_omega, int step_index, int timeout_steps);

    [[nodiscard]] const RobotState& state() const { return state_; }
    [[nodiscard]] const GoalFeatures& features() const { return features_; }
    [[nodiscard]] const GoalSpec& goal() const { return goal_; }
    [[nodiscard]] double sign_e0() const { return sign_e0_; }
    [[nodiscard]] const DiscretizerSpec& spec() const { return spec_; }
    [[nodiscard]] const ActionGrid& grid() const { return grid_; }
    [[nodiscard]] const RewardWeights& weights() const { return weights_; }
    [[nodiscard]] const MotionLimits& limits() const { return limits_; }
    [[nodiscard]] const Workspace& workspace() const { return workspace_; }
    [[nodiscard]] DiscreteState observe() const {
        return discretize(features_.distance, features_.heading_error, state_.v,
                          state_.omega, spec_);
    }

private:
    Workspace workspace_;
    MotionLimits limits_;
    DiscretizerSpec spec_;
    ActionGrid grid_;
    RewardWeights weights_;
    RobotState state_;
    GoalSpec goal_;
    GoalFeatures features_;
    double sign_e0_ = 0.0;
};

struct EpisodeStats {
    TerminalCause cause = TerminalCause::none;
    double total_reward = 0.0;  ///< undiscounted sum
    double final_distance = 0.0;
    int steps = 0;
};

/// Runs one episode from the environment's current state. In the train phase
/// the table is updated online per cfg.rule; in eval the policy is greedy
/// and the table is read-only. Transitions are appended to *records when
/// provided.
EpisodeStats run_episode(PlannerEnv& env, QTable& q, const TrainConfig& cfg, Phase phase,
                         double eps, Rng& rng,
                         std::vector<TransitionRecord>* records = nullptr);

struct CurveRow {
    int episode = 0;
    double episode_return = 0.0;
    double final_distance = 0.0;
    bool success = false;
};

struct TrainResult {
    QTable q;
    std::vector<CurveRow> curve;
};

/// Full training run; deterministic for a fixed cfg.seed.
TrainResult train(const Workspace& ws, const MotionLimits& limits,
                  const DiscretizerSpec& spec, const ActionGrid& grid,
                  const RewardWeights& weights, const TrainConfig& cfg);

struct EvalResult {
    double success_rate = 0.0;
    double mean_final_distance = 0.0;
    double mean_steps = 0.0;
};

/// Greedy evaluation (eps = 0, eval-phase shaping) over n_episodes fresh
/// start/goal draws.
EvalResult evaluate_greedy(PlannerEnv& env, const QTable& q, const TrainConfig& cfg,
                           int n_episodes, std::uint64_t seed);

void write_learning_curve_csv(const std::string& path, const std::vector<CurveRow>& curve);

}  // namespace skidstack::rl
