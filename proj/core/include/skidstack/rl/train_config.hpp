// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace skidstack::rl {

enum class UpdateRule { q_learning, sarsa };

[[nodiscard]] const char* to_string(UpdateRule rule);
[[nodiscard]] UpdateRule update_rule_from_string(const std::string& name);

/// Goal draw per episode. Since the Markov state is goal-relative, training
/// on a distance mix feeds the near-goal bins that uniform pairs almost
/// never produce; evaluation stays on uniform goals.
enum class GoalSampling { uniform, mixed };

struct TrainConfig {
    double alpha = 0.10;        ///< learning rate, (0, 1]
    double gamma = 0.95;        ///< discount, (0, 1)
    int episodes = 30000;
    int eval_episodes = 1000;
    double eps0 = 1.0;
    double eps_final = 1e-3;
    int timeout_steps = 1200;
    int eval_timeout_steps = 0;  ///< 0 = same horizon as training
    UpdateRule rule = UpdateRule::q_learning;
    std::uint64_t seed = 1;
    double start_min_dist = 0.20;  ///< m, minimum start-to-goal distance
    double goal_margin = 2.0;      ///< m, goal inset from workspace walls
    GoalSampling train_goal_sampling = GoalSampling::mixed;
    double mixed_fraction = 0.35;  ///< share of log-uniform-distance goals in mixed mode

    [[nodiscard]] int eval_timeout() const {
        return eval_timeout_steps > 0 ? eval_timeout_steps : timeout_steps;
    }

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("TrainConfig: alpha out of (0,1]");
        if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("TrainConfig: gamma out of (0,1)");
        if (episodes < 1) throw std::invalid_argument("TrainConfig: episodes < 1");
        if (timeout_steps < 1) throw std::invalid_argument("TrainConfig: timeout_steps < 1");
        if (!(eps0 >= 0.0 && eps0 <= 1.0 && eps_final > 0.0 && eps_final <= eps0)) {
            throw std::invalid_argument("TrainConfig: bad epsilon schedule");
        }
    }
};

/// Exponential exploration decay from eps0 at episode 0 to eps_final at the
/// last episode.
[[nodiscard]] inline double epsilon_at(const TrainConfig& cfg, int episode) {
    if (cfg.episodes <= 1) return cfg.eps_final;
    const double frac = static_cast<double>(episode) / (cfg.episodes - 1);
    return cfg.eps0 * std::pow(cfg.eps_final / cfg.eps0, frac);
}

}  // namespace skidstack::rl
