// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <benchmark/benchmark.h>

#include "skidstack/rl/trainer.hpp"

using namespace skidstack;

static void BM_EnvStepAndUpdate(benchmark::State& state) {
    Workspace ws{-10, 10, -10, 10};
    MotionLimits lim;
    const auto spec = rl::DiscretizerSpec::for_workspace(ws, lim);
    const auto grid = rl::ActionGrid::from_limits(lim);
    rl::RewardWeights w;
    rl::PlannerEnv env(ws, lim, spec, grid, w);
    rl::QTable q(spec, grid);
    rl::TrainConfig cfg;
    cfg.timeout_steps = 1 << 30;  // never time out inside the loop
    Rng rng(1);
    env.reset(rng, 0.2, 1.0);

    int t = 0;
    for (auto _ : state) {
        const std::int64_t s = env.observe().flat;
        const int a = rl::select_action(q, s, 0.1, rng);
        const auto [av, aw] = grid.action(a);
        const auto shaped = rl::shape_policy_action(av, aw, env.state(), env.features(),
                                                    rl::Phase::train, w, lim);
        const auto res = env.step(shaped.a_v, shaped.a_omega, t++, cfg.timeout_steps);
        rl::TransitionRecord rec{s, a, res.reward, env.observe().flat, -1,
                                 res.cause != rl::TerminalCause::none, res.cause};
        rl::td_update(q, rec, cfg);
        if (rec.terminal) {
            env.reset(rng, 0.2, 1.0);
            t = 0;
        }
        benchmark::DoNotOptimize(q);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStepAndUpdate);

static void BM_GreedyEpisode(benchmark::State& state) {
    Workspace ws{-10, 10, -10, 10};
    MotionLimits lim;
    const auto spec = rl::DiscretizerSpec::for_workspace(ws, lim);
    const auto grid = rl::ActionGrid::from_limits(lim);
    rl::RewardWeights w;
    rl::PlannerEnv env(ws, lim, spec, grid, w);
    rl::QTable q(spec, grid);
    rl::TrainConfig cfg;
    cfg.timeout_steps = 400;
    Rng rng(7);

    for (auto _ : state) {
        env.reset(rng, 0.2, 1.0);
        const auto stats = rl::run_episode(env, q, cfg, rl::Phase::eval, 0.0, rng);
        benchmark::DoNotOptimize(stats);
    }
}
BENCHMARK(BM_GreedyEpisode);
