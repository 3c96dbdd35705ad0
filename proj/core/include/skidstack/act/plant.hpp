// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Synthetic ground-truth in-wheel actuator: first-order wheel-speed dynamics
// A * dv/dt = u + F(v) + d with a smooth, monotone drag/friction map F and a
// bounded slip disturbance d. The exact inverse u = A * dv_d/dt - F(v_d)
// serves as a test oracle and as the dataset generator's control source.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skidstack/rng.hpp"

namespace skidstack::act {

struct PlantParams {
    double inertia = 120.0;     ///< A_i, > 0
    double c1 = 40.0;           ///< viscous drag gain
    double c2 = 15.0;           ///< quadratic drag gain
    double c3 = 25.0;           ///< Coulomb-like friction gain
    double v_s = 0.02;          ///< friction smoothing speed, m/s
    double wheel_radius = 0.4;  ///< m

    /// F(v) = -c1 v - c2 v|v| - c3 tanh(v / v_s); bounded, Lipschitz, monotone.
    [[nodiscard]] double friction(double v) const;
    [[nodiscard]] double friction_slope(double v) const;
    /// max |F| over [v_lo, v_hi]; |F| is largest at the range end of larger
    /// magnitude since F is odd-symmetric and monotone.
    [[nodiscard]] double peak_friction(double v_lo, double v_hi) const;

    void validate() const {
        if (inertia <= 0.0) throw std::invalid_argument("PlantParams: inertia must be > 0");
        if (v_s <= 0.0) throw std::invalid_argument("PlantParams: v_s must be > 0");
    }
};

enum class SlipModel { none, constant_ratio, stochastic };

[[nodiscard]] const char* to_string(SlipModel m);
[[nodiscard]] SlipModel slip_model_from_string(const std::string& name);

struct DisturbanceSpec {
    SlipModel model = SlipModel::none;
    double bound = 0.0;   ///< d*, control-input units; realized |d| <= bound
    double band_lo = 1.0; ///< Hz, stochastic band
    double band_hi = 3.0; ///< Hz
    std::uint64_t seed = 0;
};

/// One realized disturbance trace per wheel. The stochastic model is a
/// seeded sinusoid bank normalized so |d(t)| <= bound for all t; the
/// constant-ratio model scales the friction term.
class Disturbance {
public:
    Disturbance() = default;
    Disturbance(const DisturbanceSpec& spec, const PlantParams& params, int wheel_index);

    /// Disturbance value at time t for current wheel speed v.
    [[nodiscard]] double at(double t, double v) const;
    [[nodiscard]] double bound() const { return spec_.bound; }

private:
    DisturbanceSpec spec_;
    PlantParams params_;
    double slip_ratio_ = 0.0;                 // constant-ratio model
    std::vector<double> amps_, freqs_, phases_;  // stochastic model
};

/// Single wheel plant, stepped with explicit Euler.
class WheelPlant {
public:
    explicit WheelPlant(PlantParams params, double initial_speed = 0.0)
        : params_(params), speed_(initial_speed) {
        params_.validate();
    }

    /// Advances one step; returns the new wheel speed.
    double step(double u, double disturbance, double dt) {
        if (dt <= 0.0) throw std::invalid_argument("WheelPlant::step: dt must be > 0");
        speed_ += dt * (u + params_.friction(speed_) + disturbance) / params_.inertia;
        return speed_;
    }

    [[nodiscard]] double speed() const { return speed_; }
    void set_speed(double v) { speed_ = v; }
    [[nodiscard]] const PlantParams& params() const { return params_; }

private:
    PlantParams params_;
    double speed_ = 0.0;
};

/// Exact inverse of the undisturbed plant along a reference trajectory:
/// u[k] = A * dv_d/dt[k] - F(v_d[k]), with the derivative taken by central
/// finite differences (one-sided at the ends).
[[nodiscard]] std::vector<double> ideal_inverse(std::span<const double> v_d,
                                                const PlantParams& params, double dt);

}  // namespace skidstack::act
