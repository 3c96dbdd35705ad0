// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Generates (wheel speed, control input) pairs by tracking an excitation
// reference on the undisturbed plant with the exact inverse, then recording
// the measured speed against the applied input. Written as CSV (k, v, u)
// with a JSON provenance sidecar.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skidstack/act/plant.hpp"

namespace skidstack::act {

enum class Excitation { ramps, chirps, random_steps };

[[nodiscard]] const char* to_string(Excitation e);
[[nodiscard]] Excitation excitation_from_string(const std::string& name);

struct ActuatorDataset {
    std::vector<double> v;  ///< measured wheel speeds, m/s
    std::vector<double> u;  ///< applied control inputs
    double sample_dt = 0.01;
    double v_lo = -0.4;
    double v_hi = 0.4;
    Excitation excitation = Excitation::ramps;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t size() const { return v.size(); }

    /// Writes <path> as CSV and <path>.meta.json with provenance.
    void save(const std::string& path, const PlantParams& params) const;
    static ActuatorDataset load(const std::string& path);

    /// Fraction of uniform speed bins of the given width that contain at
    /// least one sample.
    [[nodiscard]] double coverage(double bin_width) const;
};

/// Tracks an excitation sweep of the speed range on the undisturbed plant.
/// duration must be positive and long enough to span [v_lo, v_hi]; the
/// reference never leaves the range.
ActuatorDataset generate_dataset(Excitation excitation, const PlantParams& params,
                                 double duration_s, double dt, double v_lo, double v_hi,
                                 std::uint64_t seed);

}  // namespace skidstack::act
