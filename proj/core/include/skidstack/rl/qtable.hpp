// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Dense tabular action-value function with versioned JSON serialization.
// The file embeds the discretizer, action grid, reward weights, motion
// limits and training config, plus a hash of the state/action layout that
// is re-verified on load.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skidstack/geometry.hpp"
#include "skidstack/rl/discretizer.hpp"
#include "skidstack/rl/reward.hpp"
#include "skidstack/rl/train_config.hpp"

namespace skidstack::rl {

class QTable {
public:
    QTable(DiscretizerSpec spec, ActionGrid grid);

    [[nodiscard]] double at(std::int64_t s, int a) const {
        return values_[static_cast<std::size_t>(s) * n_actions_ + static_cast<std::size_t>(a)];
    }
    double& at(std::int64_t s, int a) {
        return values_[static_cast<std::size_t>(s) * n_actions_ + static_cast<std::size_t>(a)];
    }

    /// Greedy action with deterministic lowest-index tie-break.
    [[nodiscard]] int best_action(std::int64_t s) const {
        const double* row = &values_[static_cast<std::size_t>(s) * n_actions_];
        int best = 0;
        for (std::size_t a = 1; a < n_actions_; ++a) {
            if (row[a] > row[best]) best = static_cast<int>(a);
        }
        return best;
    }

    [[nodiscard]] double max_value(std::int64_t s) const {
        const double* row = &values_[static_cast<std::size_t>(s) * n_actions_];
        double m = row[0];
        for (std::size_t a = 1; a < n_actions_; ++a) m = std::max(m, row[a]);
        return m;
    }

    [[nodiscard]] std::int64_t n_states() const { return spec_.state_count(); }
    [[nodiscard]] int n_actions() const { return static_cast<int>(n_actions_); }
    [[nodiscard]] const DiscretizerSpec& spec() const { return spec_; }
    [[nodiscard]] const ActionGrid& grid() const { return grid_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    /// Hash over the canonical serialization of the discretizer and grid.
    [[nodiscard]] std::string layout_hash() const;

    void save(const std::string& path, const RewardWeights& weights,
              const MotionLimits& limits, const TrainConfig& config) const;

    struct Loaded;
    /// Loads and verifies the embedded layout hash; throws on mismatch.
    static Loaded load(const std::string& path);

private:
    DiscretizerSpec spec_;
    ActionGrid grid_;
    std::size_t n_actions_;
    std::vector<double> values_;
};

/// A table plus everything it was trained with.
struct QTable::Loaded {
    QTable table;
    RewardWeights weights;
    MotionLimits limits;
    TrainConfig config;
};

}  // namespace skidstack::rl
