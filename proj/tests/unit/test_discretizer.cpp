// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include <doctest.h>

#include "skidstack/rl/discretizer.hpp"
#include "skidstack/rng.hpp"

using namespace skidstack;
using namespace skidstack::rl;

namespace {

DiscretizerSpec table_spec() {
    Workspace ws;
    MotionLimits lim;
    return DiscretizerSpec::for_workspace(ws, lim);
}

}  // namespace

TEST_CASE("for_workspace derives the distance binning from the diagonal") {
    const auto spec = table_spec();
    CHECK(spec.d_max == doctest::Approx(70.7106781).epsilon(1e-6));
    CHECK(spec.n_d == 71);
    CHECK(spec.n_theta == 24);
    CHECK(spec.n_v == 4);
    CHECK(spec.n_omega == 5);
    CHECK(spec.state_count() == 71 * 24 * 4 * 5);
}

TEST_CASE("discretize range ends and clamping") {
    auto spec = table_spec();
    CHECK(discretize(0.0, 0.0, 0.0, 0.0, spec).i_d == 0);
    CHECK(discretize(-1.0, 0.0, 0.0, 0.0, spec).i_d == 0);         // clamps low
    CHECK(discretize(1e9, 0.0, 0.0, 0.0, spec).i_d == spec.n_d - 1);  // clamps high
    CHECK(discretize(0.0, -kPi, 0.0, 0.0, spec).i_e == 0);
    CHECK(discretize(0.0, kPi - 1e-12, 0.0, 0.0, spec).i_e == spec.n_theta - 1);
    CHECK(discretize(0.0, 0.0, spec.v_max, 0.0, spec).i_v == spec.n_v - 1);
    CHECK(discretize(0.0, 0.0, 0.0, spec.omega_max, spec).i_omega == spec.n_omega - 1);
}

TEST_CASE("uniform binning arithmetic matches hand evaluation") {
    DiscretizerSpec spec = table_spec();
    spec.n_d = 36;
    spec.d_max = 36.0;
    CHECK(discretize(1.5, 0.0, 0.0, 0.0, spec).i_d == 1);
    CHECK(discretize(0.999, 0.0, 0.0, 0.0, spec).i_d == 0);
    CHECK(discretize(35.999, 0.0, 0.0, 0.0, spec).i_d == 35);
}

TEST_CASE("bin centers round-trip to their own bin") {
    const auto spec = table_spec();
    for (int i = 0; i < spec.n_d; ++i) {
        const double c = (i + 0.5) * spec.d_max / spec.n_d;
        CHECK(discretize(c, 0, 0, 0, spec).i_d == i);
    }
    for (int i = 0; i < spec.n_theta; ++i) {
        const double c = -kPi + (i + 0.5) * kTwoPi / spec.n_theta;
        CHECK(discretize(0, c, 0, 0, spec).i_e == i);
    }
    for (int i = 0; i < spec.n_v; ++i) {
        const double c = spec.v_min + (i + 0.5) * (spec.v_max - spec.v_min) / spec.n_v;
        CHECK(discretize(0, 0, c, 0, spec).i_v == i);
    }
    for (int i = 0; i < spec.n_omega; ++i) {
        const double c =
            spec.omega_min + (i + 0.5) * (spec.omega_max - spec.omega_min) / spec.n_omega;
        CHECK(discretize(0, 0, 0, c, spec).i_omega == i);
    }
}

TEST_CASE("flatten and unflatten are a bijection over the full range") {
    DiscretizerSpec spec = table_spec();
    spec.n_d = 6;  // small enough to enumerate
    for (std::int64_t flat = 0; flat < spec.state_count(); ++flat) {
        const DiscreteState s = unflatten(flat, spec);
        CHECK(flatten(s.i_d, s.i_e, s.i_v, s.i_omega, spec) == flat);
    }
}

TEST_CASE("discretize keeps flat index consistent with components") {
    const auto spec = table_spec();
    Rng rng(3);
    for (int i = 0; i < 5000; ++i) {
        const auto s = discretize(rng.uniform(0, spec.d_max), rng.uniform(-kPi, kPi),
                                  rng.uniform(spec.v_min, spec.v_max),
                                  rng.uniform(spec.omega_min, spec.omega_max), spec);
        CHECK(s.flat == flatten(s.i_d, s.i_e, s.i_v, s.i_omega, spec));
        CHECK(s.flat >= 0);
        CHECK(s.flat < spec.state_count());
    }
}

TEST_CASE("action grid from Table-style limits") {
    MotionLimits lim;
    const ActionGrid grid = ActionGrid::from_limits(lim);
    REQUIRE(grid.a_v_levels.size() == 3);
    REQUIRE(grid.a_omega_levels.size() == 3);
    CHECK(grid.a_v_levels[0] == doctest::Approx(-0.10));
    CHECK(grid.a_v_levels[1] == doctest::Approx(0.0));
    CHECK(grid.a_v_levels[2] == doctest::Approx(0.10));
    CHECK(grid.a_omega_levels[0] == doctest::Approx(-0.02));
    CHECK(grid.size() == 9);
    const auto [av, aw] = grid.action(5);  // row-major: a_v index 1, a_omega index 2
    CHECK(av == doctest::Approx(0.0));
    CHECK(aw == doctest::Approx(0.02));
}

TEST_CASE("bin counts below two are rejected") {
    DiscretizerSpec spec = table_spec();
    spec.n_v = 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
