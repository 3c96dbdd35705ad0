// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Safety circle for one goal segment, expressed in the segment frame whose
// origin is the segment start: the allowed zone is a circle of radius
// O = zeta + |goal|/2 centered on the start-goal midpoint, and E is the
// robot's distance to that midpoint. The barrier gain log^2(O / (O - E))
// vanishes at the midpoint and diverges at the circle.

#pragma once

#include <cmath>
#include <stdexcept>

namespace skidstack::ctl {

struct SafetyZone {
    double current = 0.0;   ///< E, m
    double radius = 0.0;    ///< O, m
    double mid_x = 0.0;     ///< zone center, segment frame
    double mid_y = 0.0;
    double goal_x = 0.0;    ///< segment-frame goal used to build the zone
    double goal_y = 0.0;

    [[nodiscard]] bool violated() const { return current >= radius; }
    [[nodiscard]] double ratio() const { return radius > 0.0 ? current / radius : 1.0; }
};

/// Builds the zone from the segment-frame robot position and goal. The
/// segment start is the frame origin by convention.
[[nodiscard]] inline SafetyZone update_safety_zone(double x, double y, double goal_x,
                                                   double goal_y, double zeta) {
    if (zeta <= 0.0) {
        throw std::invalid_argument("update_safety_zone: zeta must be > 0");
    }
    SafetyZone z;
    z.mid_x = 0.5 * goal_x;
    z.mid_y = 0.5 * goal_y;
    z.goal_x = goal_x;
    z.goal_y = goal_y;
    z.current = std::hypot(x - z.mid_x, y - z.mid_y);
    z.radius = zeta + std::hypot(z.mid_x, z.mid_y);
    return z;
}

struct BarrierGain {
    double value = 0.0;   ///< log^2(O/(O-E)); 0 when violated
    bool violated = false;
};

/// Barrier factor of the control and adaptive laws. E >= O is reported as a
/// violation signal rather than evaluated (the supervisor owns the response).
[[nodiscard]] inline BarrierGain barrier_gain(const SafetyZone& zone) {
    if (zone.violated()) {
        return {0.0, true};
    }
    const double l = std::log(zone.radius / (zone.radius - zone.current));
    return {l * l, false};
}

}  // namespace skidstack::ctl
