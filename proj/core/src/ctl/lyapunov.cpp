// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/ctl/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skidstack::ctl {

StabilityConstants stability_constants(std::span<const double> inertias,
                                       std::span<const ControllerGains> gains,
                                       std::span<const double> disturbance_bounds) {
    if (inertias.size() != gains.size() || inertias.size() != disturbance_bounds.size() ||
        inertias.empty()) {
        throw std::invalid_argument("stability_constants: mismatched spans");
    }
    StabilityConstants out;
    out.mu = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < inertias.size(); ++i) {
        gains[i].validate();
        const double rate_e = (gains[i].epsilon - gains[i].kappa) / inertias[i];
        out.mu = std::min(out.mu, std::min(rate_e, gains[i].delta));
        out.ell += disturbance_bounds[i] * disturbance_bounds[i] / (2.0 * gains[i].kappa);
    }
    return out;
}

LyapunovSeries lyapunov_series(const std::vector<std::vector<double>>& errors,
                               const std::vector<std::vector<double>>& chi_hats,
                               std::span<const double> inertias, double dt) {
    if (errors.size() != chi_hats.size() || errors.size() != inertias.size() ||
        errors.empty()) {
        throw std::invalid_argument("lyapunov_series: mismatched wheel counts");
    }
    const std::size_t n = errors.front().size();
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].size() != n || chi_hats[i].size() != n) {
            throw std::invalid_argument("lyapunov_series: ragged trajectories");
        }
    }
    LyapunovSeries s;
    s.t.resize(n);
    s.vbar.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.t[k] = static_cast<double>(k) * dt;
        double v = 0.0;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            v += 0.5 * inertias[i] * errors[i][k] * errors[i][k] +
                 0.5 * chi_hats[i][k] * chi_hats[i][k];
        }
        s.vbar[k] = v;
    }
    s.vdot.resize(n, 0.0);
    if (n >= 2) {
        s.vdot[0] = (s.vbar[1] - s.vbar[0]) / dt;
        s.vdot[n - 1] = (s.vbar[n - 1] - s.vbar[n - 2]) / dt;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            s.vdot[k] = (s.vbar[k + 1] - s.vbar[k - 1]) / (2.0 * dt);
        }
    }
    return s;
}

EnvelopeCheck check_envelope(const LyapunovSeries& series, double mu, double ell,
                             double rel_slack) {
    EnvelopeCheck out;
    if (series.vbar.empty()) return out;
    const double v0 = series.vbar.front();
    const double offset = (mu > 0.0) ? ell / mu : 0.0;
    for (std::size_t k = 0; k < series.vbar.size(); ++k) {
        const double envelope = v0 * std::exp(-mu * series.t[k]) + offset;
        const double excess = series.vbar[k] - envelope * (1.0 + rel_slack);
        if (excess > out.max_excess) {
            out.max_excess = excess;
            if (out.first_violation < 0) out.first_violation = static_cast<int>(k);
        }
    }
    out.holds = out.first_violation < 0;
    if (out.holds) {
        // Report how much headroom remains (most negative excess is not
        // interesting; keep 0 for a clean pass).
        out.max_excess = 0.0;
    }
    return out;
}

ExponentialFit fit_exponential(const LyapunovSeries& series, double floor_fraction) {
    ExponentialFit fit;
    if (series.vbar.size() < 3) return fit;
    const double v0 = series.vbar.front();
    const double floor = v0 * floor_fraction;

    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < series.vbar.size(); ++k) {
        if (series.vbar[k] <= floor || series.vbar[k] <= 0.0) break;
        xs.push_back(series.t[k]);
        ys.push_back(std::log(series.vbar[k]));
    }
    if (xs.size() < 3) return fit;

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
        syy += ys[k] * ys[k];
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) return fit;
    const double slope = (n * sxy - sx * sy) / denom;
    fit.mu_fit = -slope;
    const double ss_tot = syy - sy * sy / n;
    const double ss_res = ss_tot - slope * (sxy - sx * sy / n);
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;

    const std::size_t tail_start = series.vbar.size() - series.vbar.size() / 10 - 1;
    double tail = 0.0;
    std::size_t count = 0;
    for (std::size_t k = tail_start; k < series.vbar.size(); ++k, ++count) {
        tail += series.vbar[k];
    }
    fit.tail_mean = count ? tail / static_cast<double>(count) : 0.0;
    return fit;
}

}  // namespace skidstack::ctl
