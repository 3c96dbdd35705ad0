// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/act/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "skidstack/geometry.hpp"
#include "skidstack/io/csv.hpp"
#include "skidstack/rng.hpp"

namespace skidstack::act {

using nlohmann::json;

const char* to_string(Excitation e) {
    switch (e) {
        case Excitation::ramps: return "ramps";
        case Excitation::chirps: return "chirps";
        case Excitation::random_steps: return "random_steps";
    }
    return "unknown";
}

Excitation excitation_from_string(const std::string& name) {
    if (name == "ramps") return Excitation::ramps;
    if (name == "chirps") return Excitation::chirps;
    if (name == "random_steps" || name == "random-steps") return Excitation::random_steps;
    throw std::invalid_argument("unknown excitation: " + name);
}

namespace {

/// Builds the reference speed trajectory for one excitation mode. All modes
/// start at v_lo and stay inside [v_lo, v_hi].
std::vector<double> build_reference(Excitation mode, double duration_s, double dt,
                                    double v_lo, double v_hi, std::uint64_t seed) {
    const std::size_t n = static_cast<std::size_t>(std::floor(duration_s / dt));
    std::vector<double> ref(n, 0.0);
    const double span = v_hi - v_lo;

    switch (mode) {
        case Excitation::ramps: {
            // Triangle sweeps, three full up-down passes over the range.
            const double period = duration_s / 3.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double phase = std::fmod(k * dt, period) / period;  // [0,1)
                const double tri = (phase < 0.5) ? 2.0 * phase : 2.0 * (1.0 - phase);
                ref[k] = v_lo + span * tri;
            }
            break;
        }
        case Excitation::chirps: {
            const double mid = 0.5 * (v_lo + v_hi);
            const double amp = 0.5 * span;
            const double f0 = 0.02, f1 = 0.2;  // Hz
            for (std::size_t k = 0; k < n; ++k) {
                const double t = k * dt;
                const double f = f0 + (f1 - f0) * t / duration_s;
                // -cos starts at v_lo and first sweeps upward.
                ref[k] = mid - amp * std::cos(kTwoPi * f * t);
            }
            break;
        }
        case Excitation::random_steps: {
            Rng rng(seed);
            const double hold_s = 2.0;
            const double slew = span / 2.0;  // per second
            double target = v_lo;
            double current = v_lo;
            double next_switch = hold_s;
            for (std::size_t k = 0; k < n; ++k) {
                const double t = k * dt;
                if (t >= next_switch) {
                    target = rng.uniform(v_lo, v_hi);
                    next_switch += hold_s;
                }
                const double max_step = slew * dt;
                current += std::clamp(target - current, -max_step, max_step);
                ref[k] = current;
            }
            break;
        }
    }
    return ref;
}

}  // namespace

double ActuatorDataset::coverage(double bin_width) const {
    if (v.empty() || bin_width <= 0.0) return 0.0;
    const int n_bins = std::max(1, static_cast<int>(std::ceil((v_hi - v_lo) / bin_width)));
    std::vector<char> hit(static_cast<std::size_t>(n_bins), 0);
    for (double s : v) {
        int i = static_cast<int>(std::floor((s - v_lo) / bin_width));
        i = std::clamp(i, 0, n_bins - 1);
        hit[static_cast<std::size_t>(i)] = 1;
    }
    const auto covered = std::count(hit.begin(), hit.end(), char(1));
    return static_cast<double>(covered) / n_bins;
}

void ActuatorDataset::save(const std::string& path, const PlantParams& params) const {
    {
        io::CsvWriter csv(path, {"k", "v", "u"});
        for (std::size_t k = 0; k < v.size(); ++k) {
            csv.row({static_cast<double>(k), v[k], u[k]});
        }
    }
    json meta;
    meta["kind"] = "actuator_dataset";
    meta["excitation"] = to_string(excitation);
    meta["seed"] = seed;
    meta["sample_dt"] = sample_dt;
    meta["v_lo"] = v_lo;
    meta["v_hi"] = v_hi;
    meta["samples"] = v.size();
    meta["plant"] = {{"inertia", params.inertia}, {"c1", params.c1},     {"c2", params.c2},
                     {"c3", params.c3},           {"v_s", params.v_s},
                     {"wheel_radius", params.wheel_radius}};
    std::ofstream out(path + ".meta.json");
    if (!out) throw std::runtime_error("ActuatorDataset::save: cannot open sidecar for " + path);
    out << meta.dump(2) << '\n';
}

ActuatorDataset ActuatorDataset::load(const std::string& path) {
    const auto table = io::read_csv(path);
    ActuatorDataset ds;
    ds.v = table.numeric_column("v");
    ds.u = table.numeric_column("u");
    std::ifstream meta_in(path + ".meta.json");
    if (meta_in) {
        const json meta = json::parse(meta_in);
        ds.sample_dt = meta.value("sample_dt", ds.sample_dt);
        ds.v_lo = meta.value("v_lo", ds.v_lo);
        ds.v_hi = meta.value("v_hi", ds.v_hi);
        ds.seed = meta.value("seed", ds.seed);
        if (meta.contains("excitation")) {
            ds.excitation = excitation_from_string(meta["excitation"].get<std::string>());
        }
    }
    return ds;
}

ActuatorDataset generate_dataset(Excitation excitation, const PlantParams& params,
                                 double duration_s, double dt, double v_lo, double v_hi,
                                 std::uint64_t seed) {
    params.validate();
    if (duration_s <= 0.0) {
        throw std::invalid_argument("generate_dataset: duration must be > 0");
    }
    if (dt <= 0.0) {
        throw std::invalid_argument("generate_dataset: dt must be > 0");
    }
    if (v_lo >= v_hi) {
        throw std::invalid_argument("generate_dataset: empty speed range");
    }

    const auto ref = build_reference(excitation, duration_s, dt, v_lo, v_hi, seed);
    if (ref.size() < 3) {
        throw std::invalid_argument("generate_dataset: duration too short to sample");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(v_hi - v_lo));
    for (double r : ref) {
        if (r < v_lo - tol || r > v_hi + tol) {
            throw std::invalid_argument("generate_dataset: excitation leaves the speed range");
        }
    }

    const auto u = ideal_inverse(ref, params, dt);
    WheelPlant plant(params, ref.front());
    ActuatorDataset ds;
    ds.sample_dt = dt;
    ds.v_lo = v_lo;
    ds.v_hi = v_hi;
    ds.excitation = excitation;
    ds.seed = seed;
    ds.v.reserve(ref.size());
    ds.u.reserve(ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        // Record the measured speed against the input applied at that sample.
        ds.v.push_back(plant.speed());
        ds.u.push_back(u[k]);
        plant.step(u[k], 0.0, dt);
    }
    return ds;
}

}  // namespace skidstack::act
