// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors
//
// Fully connected feedforward network for the scalar inverse actuator map:
// min-max normalization onto [-1, 1] on both ends, tanh hidden layers and a
// linear output. Parameters pack into a single vector (W1, b1, W2, b2, ...)
// so the optimizer can treat the model as a flat point in R^n.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace skidstack::nn {

/// Invertible affine map between [lo, hi] and [-1, 1]. A degenerate range
/// maps everything to 0 forward and to the midpoint backward.
struct MinMaxMap {
    double lo = -1.0;
    double hi = 1.0;

    [[nodiscard]] bool degenerate() const { return !(hi > lo); }
    [[nodiscard]] double normalize(double x) const {
        if (degenerate()) return 0.0;
        return 2.0 * (x - lo) / (hi - lo) - 1.0;
    }
    [[nodiscard]] double denormalize(double y) const {
        if (degenerate()) return 0.5 * (lo + hi);
        return lo + 0.5 * (y + 1.0) * (hi - lo);
    }
    static MinMaxMap fit(const std::vector<double>& values);
};

class NetworkModel {
public:
    NetworkModel() = default;

    /// Builds a network with the given layer sizes (input, hidden..., output)
    /// and seeded uniform init in +-sqrt(6 / (fan_in + fan_out)).
    static NetworkModel create(const std::vector<int>& layer_sizes, std::uint64_t seed);

    /// Inference on one raw sample: normalize, cascade, denormalize.
    [[nodiscard]] double forward(double v) const;

    /// Normalized-domain forward pass over a batch (row vector of inputs).
    [[nodiscard]] Eigen::RowVectorXd forward_norm(const Eigen::RowVectorXd& x_norm) const;

    [[nodiscard]] int parameter_count() const;
    [[nodiscard]] Eigen::VectorXd parameters() const;
    void set_parameters(const Eigen::VectorXd& beta);

    [[nodiscard]] const std::vector<int>& layer_sizes() const { return layer_sizes_; }
    [[nodiscard]] const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
    [[nodiscard]] const std::vector<Eigen::VectorXd>& biases() const { return biases_; }
    std::vector<Eigen::MatrixXd>& mutable_weights() { return weights_; }
    std::vector<Eigen::VectorXd>& mutable_biases() { return biases_; }

    MinMaxMap input_map;
    MinMaxMap output_map;

    /// Hash over layer sizes and normalization, embedded in the model file.
    [[nodiscard]] std::string layout_hash() const;

    void save(const std::string& path) const;
    static NetworkModel load(const std::string& path);

private:
    std::vector<int> layer_sizes_;
    std::vector<Eigen::MatrixXd> weights_;  // weights_[j]: sizes[j+1] x sizes[j]
    std::vector<Eigen::VectorXd> biases_;

    friend double batch_loss_and_gradient(const NetworkModel&, const Eigen::RowVectorXd&,
                                          const Eigen::RowVectorXd&, Eigen::VectorXd*);
};

/// Mean squared error over a normalized batch and, when grad is non-null,
/// its gradient with respect to the packed parameter vector via
/// backpropagation. Throws std::invalid_argument on an empty batch.
double batch_loss_and_gradient(const NetworkModel& model, const Eigen::RowVectorXd& x_norm,
                               const Eigen::RowVectorXd& y_norm,
                               Eigen::VectorXd* grad = nullptr);

}  // namespace skidstack::nn
