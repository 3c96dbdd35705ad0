// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/pose/pose_provider.hpp"

#include <stdexcept>

#include "skidstack/io/csv.hpp"
#include "skidstack/rng.hpp"

namespace skidstack::pose {

std::optional<PoseSample> TruthProvider::sample(double /*t*/, const PoseSample& truth) {
    return truth;
}

NoisyProvider::NoisyProvider(const NoiseSpec& spec) : spec_(spec) {
    if (spec_.sigma_xy < 0.0 || spec_.sigma_theta < 0.0) {
        throw std::invalid_argument("NoisyProvider: sigma must be >= 0");
    }
}

std::optional<PoseSample> NoisyProvider::sample(double /*t*/, const PoseSample& truth) {
    // Counter-keyed draws: the k-th sample of a stream is the same no matter
    // how the caller batches requests.
    Rng rng(spec_.seed ^ (0xa5a5a5a5ULL + draws_ * 0x9e3779b97f4a7c15ULL));
    ++draws_;
    PoseSample s = truth;
    s.x += rng.gaussian(0.0, spec_.sigma_xy);
    s.y += rng.gaussian(0.0, spec_.sigma_xy);
    s.theta = wrap_pi(s.theta + rng.gaussian(0.0, spec_.sigma_theta));
    return s;
}

ReplayProvider::ReplayProvider(std::vector<PoseSample> log) : log_(std::move(log)) {
    for (std::size_t i = 1; i < log_.size(); ++i) {
        if (!(log_[i].t > log_[i - 1].t)) {
            throw std::invalid_argument("ReplayProvider: timestamps must strictly increase");
        }
    }
}

std::optional<PoseSample> ReplayProvider::sample(double t, const PoseSample& /*truth*/) {
    if (log_.empty() || t < log_.front().t) return std::nullopt;
    if (t > log_.back().t) return std::nullopt;  // stream exhausted
    while (cursor_ + 1 < log_.size() && log_[cursor_ + 1].t <= t) {
        ++cursor_;
    }
    PoseSample s = log_[cursor_];  // zero-order hold
    s.t = t;
    return s;
}

void write_pose_log(const std::string& path, const std::vector<PoseSample>& rows) {
    io::CsvWriter csv(path, {"t", "x", "y", "theta"});
    for (const auto& r : rows) {
        csv.row({r.t, r.x, r.y, r.theta});
    }
}

std::vector<PoseSample> read_pose_log(const std::string& path) {
    const auto table = io::read_csv(path);
    const auto t = table.numeric_column("t");
    const auto x = table.numeric_column("x");
    const auto y = table.numeric_column("y");
    const auto theta = table.numeric_column("theta");
    std::vector<PoseSample> rows(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        rows[i] = PoseSample{t[i], x[i], y[i], theta[i]};
    }
    return rows;
}

std::unique_ptr<PoseProvider> make_provider(const std::string& mode, const NoiseSpec& noise,
                                            const std::string& log_path) {
    if (mode == "truth") return std::make_unique<TruthProvider>();
    if (mode == "noisy") return std::make_unique<NoisyProvider>(noise);
    if (mode == "replay") return std::make_unique<ReplayProvider>(read_pose_log(log_path));
    throw std::invalid_argument("make_provider: unknown pose mode: " + mode);
}

}  // namespace skidstack::pose
