// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/nn/fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "skidstack/nn/scg.hpp"
#include "skidstack/rng.hpp"

namespace skidstack::nn {

using nlohmann::json;

void SplitSpec::validate() const {
    if (train_ratio <= 0.0 || val_ratio <= 0.0 || test_ratio <= 0.0) {
        throw std::invalid_argument("SplitSpec: ratios must be positive");
    }
    if (std::abs(train_ratio + val_ratio + test_ratio - 1.0) > 1e-9) {
        throw std::invalid_argument("SplitSpec: ratios must sum to 1");
    }
}

SplitIndices make_split(int n_samples, const SplitSpec& spec) {
    spec.validate();
    if (n_samples < 3) {
        throw std::invalid_argument("make_split: need at least 3 samples");
    }
    std::vector<int> order(static_cast<std::size_t>(n_samples));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(spec.seed);
    for (int i = n_samples - 1; i > 0; --i) {  // Fisher-Yates
        const int j = rng.uniform_int(i + 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    auto n_train = static_cast<std::size_t>(std::llround(spec.train_ratio * n_samples));
    auto n_val = static_cast<std::size_t>(std::llround(spec.val_ratio * n_samples));
    n_train = std::max<std::size_t>(1, std::min(n_train, static_cast<std::size_t>(n_samples) - 2));
    n_val = std::max<std::size_t>(1,
        std::min(n_val, static_cast<std::size_t>(n_samples) - n_train - 1));
    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + static_cast<long>(n_train));
    out.val.assign(order.begin() + static_cast<long>(n_train),
                   order.begin() + static_cast<long>(n_train + n_val));
    out.test.assign(order.begin() + static_cast<long>(n_train + n_val), order.end());
    return out;
}

const char* to_string(StopCause cause) {
    switch (cause) {
        case StopCause::goal: return "goal";
        case StopCause::min_gradient: return "min-gradient";
        case StopCause::max_epochs: return "max-epochs";
        case StopCause::early_stop: return "early-stop";
    }
    return "unknown";
}

void TrainReport::save(const std::string& path) const {
    json j;
    j["kind"] = "train_report";
    j["train_loss"] = train_loss;
    j["val_loss"] = val_loss;
    j["best_epoch"] = best_epoch;
    j["stop_cause"] = to_string(cause);
    j["test_mse"] = test_mse;
    j["test_mse_denorm"] = test_mse_denorm;
    j["target_variance"] = target_variance;
    j["degenerate_target"] = degenerate_target;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("TrainReport::save: cannot open " + path);
    out << j.dump(2) << '\n';
}

namespace {

Eigen::RowVectorXd gather_normalized(const std::vector<double>& values,
                                     const std::vector<int>& idx, const MinMaxMap& map) {
    Eigen::RowVectorXd out(static_cast<long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out(static_cast<long>(i)) = map.normalize(values[static_cast<std::size_t>(idx[i])]);
    }
    return out;
}

}  // namespace

FitResult fit(const act::ActuatorDataset& dataset, const SplitSpec& split,
              const FitOptions& options) {
    if (dataset.size() < 3) {
        throw std::invalid_argument("fit: dataset must have at least 3 samples");
    }
    const auto idx = make_split(static_cast<int>(dataset.size()), split);

    std::vector<int> layer_sizes;
    layer_sizes.push_back(1);
    layer_sizes.insert(layer_sizes.end(), options.hidden_sizes.begin(),
                       options.hidden_sizes.end());
    layer_sizes.push_back(1);

    NetworkModel model = NetworkModel::create(layer_sizes, options.init_seed);
    model.input_map = MinMaxMap::fit(dataset.v);
    model.output_map = MinMaxMap::fit(dataset.u);

    TrainReport report;
    report.degenerate_target = model.output_map.degenerate();

    const Eigen::RowVectorXd x_train = gather_normalized(dataset.v, idx.train, model.input_map);
    const Eigen::RowVectorXd y_train = gather_normalized(dataset.u, idx.train, model.output_map);
    const Eigen::RowVectorXd x_val = gather_normalized(dataset.v, idx.val, model.input_map);
    const Eigen::RowVectorXd y_val = gather_normalized(dataset.u, idx.val, model.output_map);
    const Eigen::RowVectorXd x_test = gather_normalized(dataset.v, idx.test, model.input_map);
    const Eigen::RowVectorXd y_test = gather_normalized(dataset.u, idx.test, model.output_map);

    // Shared scratch model for objective evaluations.
    NetworkModel scratch = model;
    const LossGradFn objective = [&](const Eigen::VectorXd& beta, Eigen::VectorXd* grad) {
        scratch.set_parameters(beta);
        return batch_loss_and_gradient(scratch, x_train, y_train, grad);
    };
    const auto val_loss_of = [&](const Eigen::VectorXd& beta) {
        scratch.set_parameters(beta);
        return batch_loss_and_gradient(scratch, x_val, y_val, nullptr);
    };

    ScgOptions scg_opts;
    ScgState st = scg_init(model.parameters(), objective, scg_opts);

    Eigen::VectorXd best_beta = st.beta;
    double best_val = val_loss_of(st.beta);
    report.best_epoch = 0;
    report.cause = StopCause::max_epochs;
    int epochs_since_best = 0;

    for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
        const ScgStepInfo info = scg_step(st, objective, scg_opts);
        const double val = val_loss_of(st.beta);
        report.train_loss.push_back(info.loss);
        report.val_loss.push_back(val);

        if (val < best_val) {
            best_val = val;
            best_beta = st.beta;
            report.best_epoch = epoch;
            epochs_since_best = 0;
        } else {
            ++epochs_since_best;
        }

        if (info.loss <= options.goal) {
            report.cause = StopCause::goal;
            break;
        }
        if (info.gradient_norm <= options.min_gradient) {
            report.cause = StopCause::min_gradient;
            break;
        }
        if (epochs_since_best >= options.patience) {
            report.cause = StopCause::early_stop;
            break;
        }
    }

    model.set_parameters(best_beta);
    scratch.set_parameters(best_beta);
    report.test_mse = batch_loss_and_gradient(scratch, x_test, y_test, nullptr);

    // Raw-unit test error and target variance for relative comparisons.
    double mse_raw = 0.0, mean_u = 0.0, var_u = 0.0;
    for (int i : idx.test) {
        mean_u += dataset.u[static_cast<std::size_t>(i)];
    }
    mean_u /= static_cast<double>(idx.test.size());
    for (int i : idx.test) {
        const double u_true = dataset.u[static_cast<std::size_t>(i)];
        const double u_hat = model.forward(dataset.v[static_cast<std::size_t>(i)]);
        mse_raw += (u_true - u_hat) * (u_true - u_hat);
        var_u += (u_true - mean_u) * (u_true - mean_u);
    }
    report.test_mse_denorm = mse_raw / static_cast<double>(idx.test.size());
    report.target_variance = var_u / static_cast<double>(idx.test.size());

    return FitResult{std::move(model), std::move(report)};
}

}  // namespace skidstack::nn
