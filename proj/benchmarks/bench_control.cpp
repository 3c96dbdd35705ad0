// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <benchmark/benchmark.h>

#include <array>

#include "skidstack/act/plant.hpp"
#include "skidstack/ctl/allocation.hpp"
#include "skidstack/ctl/wheel_loop.hpp"

using namespace skidstack;

static void BM_FourWheelControlTick(benchmark::State& state) {
    act::PlantParams plant_params;
    ctl::ControllerGains gains;
    ctl::VehicleGeometry geom;
    std::array<act::WheelPlant, 4> plants{
        act::WheelPlant(plant_params), act::WheelPlant(plant_params),
        act::WheelPlant(plant_params), act::WheelPlant(plant_params)};
    std::array<ctl::WheelLoopState, 4> loops;
    ctl::SafetyZone zone;
    zone.radius = 5.0;
    zone.current = 2.0;
    const double dt = 0.05;
    double t = 0.0;

    for (auto _ : state) {
        const auto refs = ctl::allocate_wheel_refs(0.2, 0.05, geom);
        for (int i = 0; i < 4; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const double u_idm = -plant_params.friction(refs[idx]);
            const auto res = ctl::control_step(loops[idx], plants[idx].speed(), refs[idx],
                                               u_idm, zone, gains, dt);
            plants[idx].step(res.u, 0.0, dt);
        }
        t += dt;
        benchmark::DoNotOptimize(plants);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FourWheelControlTick);
