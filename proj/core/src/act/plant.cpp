// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/act/plant.hpp"

#include <algorithm>
#include <cmath>

#include "skidstack/geometry.hpp"

namespace skidstack::act {

double PlantParams::friction(double v) const {
    return -c1 * v - c2 * v * std::abs(v) - c3 * std::tanh(v / v_s);
}

double PlantParams::friction_slope(double v) const {
    const double sech = 1.0 / std::cosh(v / v_s);
    return -c1 - 2.0 * c2 * std::abs(v) - (c3 / v_s) * sech * sech;
}

double PlantParams::peak_friction(double v_lo, double v_hi) const {
    return std::max(std::abs(friction(v_lo)), std::abs(friction(v_hi)));
}

const char* to_string(SlipModel m) {
    switch (m) {
        case SlipModel::none: return "none";
        case SlipModel::constant_ratio: return "constant-ratio";
        case SlipModel::stochastic: return "stochastic";
    }
    return "unknown";
}

SlipModel slip_model_from_string(const std::string& name) {
    if (name == "none") return SlipModel::none;
    if (name == "constant-ratio" || name == "constant_ratio") return SlipModel::constant_ratio;
    if (name == "stochastic") return SlipModel::stochastic;
    throw std::invalid_argument("unknown slip model: " + name);
}

Disturbance::Disturbance(const DisturbanceSpec& spec, const PlantParams& params,
                         int wheel_index)
    : spec_(spec), params_(params) {
    if (spec_.bound < 0.0) {
        throw std::invalid_argument("Disturbance: bound must be >= 0");
    }
    switch (spec_.model) {
        case SlipModel::none:
            break;
        case SlipModel::constant_ratio: {
            // d = -ratio * F(v); |F| <= peak keeps |d| <= bound.
            const double peak = params_.peak_friction(-0.5, 0.5);
            slip_ratio_ = (peak > 0.0) ? spec_.bound / peak : 0.0;
            break;
        }
        case SlipModel::stochastic: {
            constexpr int kTones = 8;
            Rng rng(spec_.seed * 0x9e3779b9ULL + static_cast<std::uint64_t>(wheel_index) + 1);
            double amp_sum = 0.0;
            for (int k = 0; k < kTones; ++k) {
                amps_.push_back(rng.uniform(0.3, 1.0));
                freqs_.push_back(rng.uniform(spec_.band_lo, spec_.band_hi));
                phases_.push_back(rng.uniform(0.0, kTwoPi));
                amp_sum += amps_.back();
            }
            // Normalize so the worst-case sum hits the bound exactly.
            if (amp_sum > 0.0) {
                for (auto& a : amps_) a *= spec_.bound / amp_sum;
            }
            break;
        }
    }
}

double Disturbance::at(double t, double v) const {
    switch (spec_.model) {
        case SlipModel::none:
            return 0.0;
        case SlipModel::constant_ratio:
            // Clamped so the bound holds even outside the nominal speed range.
            return std::clamp(-slip_ratio_ * params_.friction(v), -spec_.bound,
                              spec_.bound);
        case SlipModel::stochastic: {
            double d = 0.0;
            for (std::size_t k = 0; k < amps_.size(); ++k) {
                d += amps_[k] * std::sin(kTwoPi * freqs_[k] * t + phases_[k]);
            }
            return d;
        }
    }
    return 0.0;
}

std::vector<double> ideal_inverse(std::span<const double> v_d, const PlantParams& params,
                                  double dt) {
    if (dt <= 0.0) throw std::invalid_argument("ideal_inverse: dt must be > 0");
    const std::size_t n = v_d.size();
    std::vector<double> u(n, 0.0);
    if (n == 0) return u;
    for (std::size_t k = 0; k < n; ++k) {
        double v_dot;
        if (n == 1) {
            v_dot = 0.0;
        } else if (k == 0) {
            v_dot = (v_d[1] - v_d[0]) / dt;
        } else if (k == n - 1) {
            v_dot = (v_d[n - 1] - v_d[n - 2]) / dt;
        } else {
            v_dot = (v_d[k + 1] - v_d[k - 1]) / (2.0 * dt);
        }
        u[k] = params.inertia * v_dot - params.friction(v_d[k]);
    }
    return u;
}

}  // namespace skidstack::act
