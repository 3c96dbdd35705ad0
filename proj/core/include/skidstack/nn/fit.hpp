// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Supervised fit of the inverse actuator map: seeded three-way split,
// min-max normalization fitted on the data, full-batch SCG epochs,
// validation-based early stopping and a single test evaluation of the
// validation-best snapshot.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skidstack/act/dataset.hpp"
#include "skidstack/nn/network.hpp"

namespace skidstack::nn {

struct SplitSpec {
    double train_ratio = 0.34;
    double val_ratio = 0.33;
    double test_ratio = 0.33;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SplitIndices {
    std::vector<int> train, val, test;
};

/// Seeded shuffle split; partitions are disjoint and exhaustive.
SplitIndices make_split(int n_samples, const SplitSpec& spec);

enum class StopCause { goal, min_gradient, max_epochs, early_stop };
[[nodiscard]] const char* to_string(StopCause cause);

struct FitOptions {
    std::vector<int> hidden_sizes{320, 210, 105};
    double goal = 1e-6;          ///< training MSE goal (normalized units)
    double min_gradient = 1e-10; ///< infinity-norm gradient floor
    int max_epochs = 500;
    int patience = 6;            ///< consecutive epochs without a new validation best
    std::uint64_t init_seed = 1;
};

struct TrainReport {
    std::vector<double> train_loss;  ///< per epoch, normalized MSE
    std::vector<double> val_loss;
    int best_epoch = -1;
    StopCause cause = StopCause::max_epochs;
    double test_mse = 0.0;           ///< normalized units, evaluated once
    double test_mse_denorm = 0.0;    ///< in raw control-input units
    double target_variance = 0.0;    ///< raw-unit variance of the test targets
    bool degenerate_target = false;

    void save(const std::string& path) const;
};

struct FitResult {
    NetworkModel model;
    TrainReport report;
};

/// Trains one shared model on the dataset. Deterministic for fixed seeds.
FitResult fit(const act::ActuatorDataset& dataset, const SplitSpec& split,
              const FitOptions& options);

}  // namespace skidstack::nn
