// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// White-box stability diagnostics for the four wheel loops: the composite
// function Vbar = sum_i (A_i/2) e_i^2 + (1/2) chi_i^2, the analytic
// dissipation constants (mu, ell) and the exponential envelope check
// Vbar(t) <= Vbar(0) exp(-mu t) + ell / mu.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "skidstack/ctl/wheel_loop.hpp"

namespace skidstack::ctl {

struct StabilityConstants {
    double mu = 0.0;
    double ell = 0.0;
};

/// mu = min_i min((eps_i - kappa_i)/A_i, delta_i); ell = sum_i d*_i^2/(2 kappa_i).
StabilityConstants stability_constants(std::span<const double> inertias,
                                       std::span<const ControllerGains> gains,
                                       std::span<const double> disturbance_bounds);

struct LyapunovSeries {
    std::vector<double> t;
    std::vector<double> vbar;
    std::vector<double> vdot;  ///< central-difference estimate, ends one-sided
};

/// Builds the series from sampled per-wheel trajectories (one inner vector
/// per wheel, all the same length, fixed sample period dt).
LyapunovSeries lyapunov_series(const std::vector<std::vector<double>>& errors,
                               const std::vector<std::vector<double>>& chi_hats,
                               std::span<const double> inertias, double dt);

struct EnvelopeCheck {
    bool holds = true;
    double max_excess = 0.0;   ///< worst Vbar - envelope, <= 0 when holds
    int first_violation = -1;  ///< sample index, -1 when none
};

/// Sample-wise check of Vbar(t) <= Vbar(0) e^{-mu t} + ell/mu, with a tiny
/// relative slack to absorb floating-point rounding of the envelope itself.
EnvelopeCheck check_envelope(const LyapunovSeries& series, double mu, double ell,
                             double rel_slack = 1e-9);

struct ExponentialFit {
    double mu_fit = 0.0;      ///< decay rate from the log-linear regression
    double r_squared = 0.0;
    double tail_mean = 0.0;   ///< mean Vbar over the last decade of samples
};

/// Least-squares line through log(Vbar) over the initial transient (samples
/// before Vbar falls below floor_fraction of its start value).
ExponentialFit fit_exponential(const LyapunovSeries& series,
                               double floor_fraction = 1e-6);

}  // namespace skidstack::ctl
