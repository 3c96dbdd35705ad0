// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Uniform binning of the planner features (d, e, v, omega) into a flat
// Markov state index, and the finite acceleration-pair action grid.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skidstack/geometry.hpp"

namespace skidstack::rl {

struct DiscretizerSpec {
    int n_d = 71;
    int n_theta = 24;
    int n_v = 4;
    int n_omega = 5;
    double d_max = 70.710678118654755;  ///< m, distance range is [0, d_max]
    double v_min = 0.0;
    double v_max = 0.25;
    double omega_min = -0.15;
    double omega_max = 0.15;

    /// Distance range set to the workspace diagonal, bin width from the grid
    /// resolution (one bin per metre by default).
    static DiscretizerSpec for_workspace(const Workspace& ws, const MotionLimits& lim,
                                         double distance_resolution = 1.0,
                                         int n_theta = 24, int n_v = 4, int n_omega = 5) {
        DiscretizerSpec s;
        s.d_max = ws.diagonal();
        s.n_d = static_cast<int>(std::ceil(s.d_max / distance_resolution));
        s.n_theta = n_theta;
        s.n_v = n_v;
        s.n_omega = n_omega;
        s.v_min = lim.v_min;
        s.v_max = lim.v_max;
        s.omega_min = lim.omega_min;
        s.omega_max = lim.omega_max;
        return s;
    }

    [[nodiscard]] std::int64_t state_count() const {
        return static_cast<std::int64_t>(n_d) * n_theta * n_v * n_omega;
    }

    void validate() const {
        if (n_d < 2 || n_theta < 2 || n_v < 2 || n_omega < 2) {
            throw std::invalid_argument("DiscretizerSpec: all bin counts must be >= 2");
        }
        if (d_max <= 0.0) {
            throw std::invalid_argument("DiscretizerSpec: d_max must be > 0");
        }
        if (v_min >= v_max || omega_min >= omega_max) {
            throw std::invalid_argument("DiscretizerSpec: empty velocity range");
        }
    }

    [[nodiscard]] bool operator==(const DiscretizerSpec&) const = default;
};

struct DiscreteState {
    int i_d = 0;
    int i_e = 0;
    int i_v = 0;
    int i_omega = 0;
    std::int64_t flat = 0;
};

namespace detail {

/// Uniform bin index over [lo, hi); out-of-range values clamp to the end bins.
[[nodiscard]] inline int bin_index(double value, double lo, double hi, int n) {
    const int i = static_cast<int>(std::floor((value - lo) / (hi - lo) * n));
    if (i < 0) return 0;
    if (i >= n) return n - 1;
    return i;
}

}  // namespace detail

[[nodiscard]] inline std::int64_t flatten(int i_d, int i_e, int i_v, int i_omega,
                                          const DiscretizerSpec& spec) {
    return ((static_cast<std::int64_t>(i_d) * spec.n_theta + i_e) * spec.n_v + i_v) *
               spec.n_omega +
           i_omega;
}

[[nodiscard]] inline DiscreteState unflatten(std::int64_t flat,
                                             const DiscretizerSpec& spec) {
    DiscreteState s;
    s.flat = flat;
    s.i_omega = static_cast<int>(flat % spec.n_omega);
    flat /= spec.n_omega;
    s.i_v = static_cast<int>(flat % spec.n_v);
    flat /= spec.n_v;
    s.i_e = static_cast<int>(flat % spec.n_theta);
    s.i_d = static_cast<int>(flat / spec.n_theta);
    return s;
}

[[nodiscard]] inline DiscreteState discretize(double d, double e, double v, double omega,
                                              const DiscretizerSpec& spec) {
    DiscreteState s;
    s.i_d = detail::bin_index(d, 0.0, spec.d_max, spec.n_d);
    s.i_e = detail::bin_index(e, -kPi, kPi, spec.n_theta);
    s.i_v = detail::bin_index(v, spec.v_min, spec.v_max, spec.n_v);
    s.i_omega = detail::bin_index(omega, spec.omega_min, spec.omega_max, spec.n_omega);
    s.flat = flatten(s.i_d, s.i_e, s.i_v, s.i_omega, spec);
    return s;
}

/// Finite grid of (a_v, a_omega) acceleration pairs, flat index row-major in
/// a_v then a_omega.
struct ActionGrid {
    std::vector<double> a_v_levels;
    std::vector<double> a_omega_levels;

    static ActionGrid from_limits(const MotionLimits& lim, double dv = 0.10,
                                  double dw = 0.02) {
        ActionGrid g;
        for (double a = lim.a_v_min; a <= lim.a_v_max + 1e-12; a += dv) {
            g.a_v_levels.push_back(std::abs(a) < 1e-15 ? 0.0 : a);
        }
        for (double a = lim.a_omega_min; a <= lim.a_omega_max + 1e-12; a += dw) {
            g.a_omega_levels.push_back(std::abs(a) < 1e-15 ? 0.0 : a);
        }
        return g;
    }

    [[nodiscard]] int size() const {
        return static_cast<int>(a_v_levels.size() * a_omega_levels.size());
    }

    [[nodiscard]] std::pair<double, double> action(int flat) const {
        const int n_w = static_cast<int>(a_omega_levels.size());
        return {a_v_levels[static_cast<std::size_t>(flat / n_w)],
                a_omega_levels[static_cast<std::size_t>(flat % n_w)]};
    }

    [[nodiscard]] bool operator==(const ActionGrid&) const = default;
};

}  // namespace skidstack::rl
