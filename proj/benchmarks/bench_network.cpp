// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <benchmark/benchmark.h>

#include "skidstack/nn/network.hpp"
#include "skidstack/rng.hpp"

using namespace skidstack;

static void BM_ForwardScalar(benchmark::State& state) {
    auto model = nn::NetworkModel::create({1, 64, 42, 21, 1}, 3);
    model.input_map = {-0.4, 0.4};
    model.output_map = {-45, 45};
    double v = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.forward(v));
        v = -v;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ForwardScalar);

static void BM_BatchGradient(benchmark::State& state) {
    const auto width = state.range(0);
    auto model = nn::NetworkModel::create(
        {1, static_cast<int>(width), static_cast<int>(width * 2 / 3),
         static_cast<int>(width / 3), 1},
        3);
    Rng rng(4);
    const int n = 4096;
    Eigen::RowVectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x(i) = rng.uniform(-1, 1);
        y(i) = rng.uniform(-1, 1);
    }
    Eigen::VectorXd grad;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nn::batch_loss_and_gradient(model, x, y, &grad));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BatchGradient)->Arg(64)->Arg(320);
