// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Skid-steer allocation between body commands (v, omega) and the four wheel
// speed references. Wheels are ordered [front-left, rear-left, front-right,
// rear-right].

#pragma once

#include <array>
#include <stdexcept>

namespace skidstack::ctl {

struct VehicleGeometry {
    double track_width = 2.0;   ///< W, m
    double wheel_radius = 0.4;  ///< m
    static constexpr int wheel_count = 4;

    void validate() const {
        if (track_width <= 0.0 || wheel_radius <= 0.0) {
            throw std::invalid_argument("VehicleGeometry: dimensions must be > 0");
        }
    }
};

using WheelSpeeds = std::array<double, 4>;

/// Left wheels run at v - omega*W/2, right wheels at v + omega*W/2.
[[nodiscard]] inline WheelSpeeds allocate_wheel_refs(double v, double omega,
                                                     const VehicleGeometry& geom) {
    const double half_track = 0.5 * geom.track_width;
    const double left = v - omega * half_track;
    const double right = v + omega * half_track;
    return {left, left, right, right};
}

struct BodyVelocity {
    double v = 0.0;
    double omega = 0.0;
};

/// Inverse of the allocation: side means recover v, the side difference over
/// the track width recovers omega.
[[nodiscard]] inline BodyVelocity body_from_wheels(const WheelSpeeds& w,
                                                   const VehicleGeometry& geom) {
    const double left = 0.5 * (w[0] + w[1]);
    const double right = 0.5 * (w[2] + w[3]);
    return {0.5 * (left + right), (right - left) / geom.track_width};
}

}  // namespace skidstack::ctl
