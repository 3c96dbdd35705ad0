// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/nn/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "skidstack/io/hash.hpp"
#include "skidstack/rng.hpp"

namespace skidstack::nn {

using nlohmann::json;

namespace {
constexpr int kFormatVersion = 1;
}

MinMaxMap MinMaxMap::fit(const std::vector<double>& values) {
    MinMaxMap m;
    if (values.empty()) return m;
    m.lo = *std::min_element(values.begin(), values.end());
    m.hi = *std::max_element(values.begin(), values.end());
    return m;
}

NetworkModel NetworkModel::create(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) {
        throw std::invalid_argument("NetworkModel: need at least input and output layers");
    }
    for (int n : layer_sizes) {
        if (n < 1) throw std::invalid_argument("NetworkModel: layer sizes must be >= 1");
    }
    NetworkModel model;
    model.layer_sizes_ = layer_sizes;
    Rng rng(seed);
    for (std::size_t j = 0; j + 1 < layer_sizes.size(); ++j) {
        const int fan_in = layer_sizes[j];
        const int fan_out = layer_sizes[j + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        Eigen::MatrixXd w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r) {
            for (int c = 0; c < fan_in; ++c) {
                w(r, c) = rng.uniform(-limit, limit);
            }
        }
        model.weights_.push_back(std::move(w));
        model.biases_.emplace_back(Eigen::VectorXd::Zero(fan_out));
    }
    return model;
}

double NetworkModel::forward(double v) const {
    Eigen::RowVectorXd x(1);
    x(0) = input_map.normalize(v);
    const Eigen::RowVectorXd y = forward_norm(x);
    return output_map.denormalize(y(0));
}

Eigen::RowVectorXd NetworkModel::forward_norm(const Eigen::RowVectorXd& x_norm) const {
    Eigen::MatrixXd a = x_norm;  // 1 x N
    const std::size_t n_layers = weights_.size();
    for (std::size_t j = 0; j < n_layers; ++j) {
        Eigen::MatrixXd z = weights_[j] * a;
        z.colwise() += biases_[j];
        if (j + 1 < n_layers) {
            a = z.array().tanh().matrix();
        } else {
            a = std::move(z);  // linear output layer
        }
    }
    return a.row(0);
}

int NetworkModel::parameter_count() const {
    int n = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        n += static_cast<int>(weights_[j].size() + biases_[j].size());
    }
    return n;
}

Eigen::VectorXd NetworkModel::parameters() const {
    Eigen::VectorXd beta(parameter_count());
    int pos = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        const auto& w = weights_[j];
        for (int r = 0; r < w.rows(); ++r) {
            for (int c = 0; c < w.cols(); ++c) beta(pos++) = w(r, c);
        }
        const auto& b = biases_[j];
        for (int r = 0; r < b.size(); ++r) beta(pos++) = b(r);
    }
    return beta;
}

void NetworkModel::set_parameters(const Eigen::VectorXd& beta) {
    if (beta.size() != parameter_count()) {
        throw std::invalid_argument("NetworkModel::set_parameters: size mismatch");
    }
    int pos = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        auto& w = weights_[j];
        for (int r = 0; r < w.rows(); ++r) {
            for (int c = 0; c < w.cols(); ++c) w(r, c) = beta(pos++);
        }
        auto& b = biases_[j];
        for (int r = 0; r < b.size(); ++r) b(r) = beta(pos++);
    }
}

std::string NetworkModel::layout_hash() const {
    json j{{"layer_sizes", layer_sizes_},
           {"activation", "tanh"},
           {"input_map", {input_map.lo, input_map.hi}},
           {"output_map", {output_map.lo, output_map.hi}}};
    return io::hex64(io::fnv1a64(j.dump()));
}

void NetworkModel::save(const std::string& path) const {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "inverse_model";
    j["layer_sizes"] = layer_sizes_;
    j["activation"] = "tanh";
    j["input_map"] = {{"lo", input_map.lo}, {"hi", input_map.hi}};
    j["output_map"] = {{"lo", output_map.lo}, {"hi", output_map.hi}};
    json weights = json::array();
    json biases = json::array();
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        std::vector<double> w_flat;
        w_flat.reserve(static_cast<std::size_t>(weights_[l].size()));
        for (int r = 0; r < weights_[l].rows(); ++r) {
            for (int c = 0; c < weights_[l].cols(); ++c) w_flat.push_back(weights_[l](r, c));
        }
        weights.push_back(w_flat);
        std::vector<double> b_flat(biases_[l].data(), biases_[l].data() + biases_[l].size());
        biases.push_back(b_flat);
    }
    j["weights"] = std::move(weights);
    j["biases"] = std::move(biases);
    j["layout_hash"] = layout_hash();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("NetworkModel::save: cannot open " + path);
    out << j.dump();
}

NetworkModel NetworkModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("NetworkModel::load: cannot open " + path);
    json j = json::parse(in);
    if (j.value("kind", "") != "inverse_model") {
        throw std::runtime_error("NetworkModel::load: not a model file: " + path);
    }
    if (j.at("format_version").get<int>() != kFormatVersion) {
        throw std::runtime_error("NetworkModel::load: unsupported format version in " + path);
    }
    NetworkModel model;
    model.layer_sizes_ = j.at("layer_sizes").get<std::vector<int>>();
    model.input_map.lo = j.at("input_map").at("lo").get<double>();
    model.input_map.hi = j.at("input_map").at("hi").get<double>();
    model.output_map.lo = j.at("output_map").at("lo").get<double>();
    model.output_map.hi = j.at("output_map").at("hi").get<double>();
    const auto weights = j.at("weights");
    const auto biases = j.at("biases");
    for (std::size_t l = 0; l + 1 < model.layer_sizes_.size(); ++l) {
        const int rows = model.layer_sizes_[l + 1];
        const int cols = model.layer_sizes_[l];
        const auto w_flat = weights.at(l).get<std::vector<double>>();
        const auto b_flat = biases.at(l).get<std::vector<double>>();
        if (w_flat.size() != static_cast<std::size_t>(rows) * cols ||
            b_flat.size() != static_cast<std::size_t>(rows)) {
            throw std::runtime_error("NetworkModel::load: layer size mismatch in " + path);
        }
        Eigen::MatrixXd w(rows, cols);
        std::size_t pos = 0;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) w(r, c) = w_flat[pos++];
        }
        model.weights_.push_back(std::move(w));
        model.biases_.push_back(
            Eigen::Map<const Eigen::VectorXd>(b_flat.data(), rows));
    }
    if (j.contains("layout_hash") &&
        j.at("layout_hash").get<std::string>() != model.layout_hash()) {
        throw std::runtime_error("NetworkModel::load: layout hash mismatch in " + path);
    }
    return model;
}

double batch_loss_and_gradient(const NetworkModel& model, const Eigen::RowVectorXd& x_norm,
                               const Eigen::RowVectorXd& y_norm, Eigen::VectorXd* grad) {
    const auto n = x_norm.size();
    if (n == 0) {
        throw std::invalid_argument("batch_loss_and_gradient: empty batch");
    }
    if (y_norm.size() != n) {
        throw std::invalid_argument("batch_loss_and_gradient: input/target size mismatch");
    }
    const auto& weights = model.weights_;
    const auto& biases = model.biases_;
    const std::size_t n_layers = weights.size();

    // Forward pass, caching activations.
    std::vector<Eigen::MatrixXd> activations;
    activations.reserve(n_layers + 1);
    activations.push_back(x_norm);
    for (std::size_t j = 0; j < n_layers; ++j) {
        Eigen::MatrixXd z = weights[j] * activations.back();
        z.colwise() += biases[j];
        if (j + 1 < n_layers) {
            activations.push_back(z.array().tanh().matrix());
        } else {
            activations.push_back(std::move(z));
        }
    }

    const Eigen::RowVectorXd residual = y_norm - activations.back().row(0);
    const double loss = residual.squaredNorm() / static_cast<double>(n);
    if (!grad) return loss;

    grad->resize(model.parameter_count());
    int pos = grad->size();

    // Output-layer error: dJ/dz = -2 (y - y_hat) per sample, averaged into
    // the parameter gradients below.
    Eigen::MatrixXd delta = (-2.0 * residual);

    for (std::size_t jj = n_layers; jj-- > 0;) {
        const Eigen::MatrixXd& a_prev = activations[jj];
        const double inv_n = 1.0 / static_cast<double>(n);
        const Eigen::MatrixXd dW = inv_n * (delta * a_prev.transpose());
        const Eigen::VectorXd db = inv_n * delta.rowwise().sum();

        pos -= static_cast<int>(db.size());
        grad->segment(pos, db.size()) = db;
        pos -= static_cast<int>(dW.size());
        {
            int p = pos;
            for (int r = 0; r < dW.rows(); ++r) {
                for (int c = 0; c < dW.cols(); ++c) (*grad)(p++) = dW(r, c);
            }
        }

        if (jj > 0) {
            // Backpropagate: (W^T delta) .* phi'(z), with phi' = 1 - a^2.
            delta = ((weights[jj].transpose() * delta).array() *
                     (1.0 - activations[jj].array().square()))
                        .matrix();
        }
    }
    return loss;
}

}  // namespace skidstack::nn
