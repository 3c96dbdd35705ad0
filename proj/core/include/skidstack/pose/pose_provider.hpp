// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Pose source for the planner: simulator ground truth, ground truth with
// seeded Gaussian noise, or replay of a recorded pose log with zero-order
// hold. Replay past the end of the log reports stream exhaustion.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skidstack/geometry.hpp"

namespace skidstack::pose {

struct PoseSample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  ///< rad in [-pi, pi)
};

struct NoiseSpec {
    double sigma_xy = 0.0;     ///< m
    double sigma_theta = 0.0;  ///< rad
    std::uint64_t seed = 0;
};

class PoseProvider {
public:
    virtual ~PoseProvider() = default;
    /// Returns the measured pose at time t, given the simulator's true pose
    /// for the synchronous modes. nullopt signals stream exhaustion (replay).
    virtual std::optional<PoseSample> sample(double t, const PoseSample& truth) = 0;
};

/// Passes the simulator pose through unchanged.
class TruthProvider final : public PoseProvider {
public:
    std::optional<PoseSample> sample(double t, const PoseSample& truth) override;
};

/// Ground truth plus seeded Gaussian position/heading noise.
class NoisyProvider final : public PoseProvider {
public:
    explicit NoisyProvider(const NoiseSpec& spec);
    std::optional<PoseSample> sample(double t, const PoseSample& truth) override;

private:
    NoiseSpec spec_;
    std::uint64_t draws_ = 0;
};

/// Replays a recorded pose log with zero-order hold between rows.
class ReplayProvider final : public PoseProvider {
public:
    explicit ReplayProvider(std::vector<PoseSample> log);
    std::optional<PoseSample> sample(double t, const PoseSample& truth) override;

private:
    std::vector<PoseSample> log_;
    std::size_t cursor_ = 0;
};

void write_pose_log(const std::string& path, const std::vector<PoseSample>& rows);
std::vector<PoseSample> read_pose_log(const std::string& path);

std::unique_ptr<PoseProvider> make_provider(const std::string& mode, const NoiseSpec& noise,
                                            const std::string& log_path);

}  // namespace skidstack::pose
