// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Skidstack Authors

#include "skidstack/rl/qtable.hpp"

#include <fstream>

#include <json.hpp>

#include "skidstack/io/hash.hpp"

namespace skidstack::rl {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json spec_to_json(const DiscretizerSpec& s) {
    return json{{"n_d", s.n_d},         {"n_theta", s.n_theta},
                {"n_v", s.n_v},         {"n_omega", s.n_omega},
                {"d_max", s.d_max},     {"v_min", s.v_min},
                {"v_max", s.v_max},     {"omega_min", s.omega_min},
                {"omega_max", s.omega_max}};
}

DiscretizerSpec spec_from_json(const json& j) {
    DiscretizerSpec s;
    s.n_d = j.at("n_d").get<int>();
    s.n_theta = j.at("n_theta").get<int>();
    s.n_v = j.at("n_v").get<int>();
    s.n_omega = j.at("n_omega").get<int>();
    s.d_max = j.at("d_max").get<double>();
    s.v_min = j.at("v_min").get<double>();
    s.v_max = j.at("v_max").get<double>();
    s.omega_min = j.at("omega_min").get<double>();
    s.omega_max = j.at("omega_max").get<double>();
    return s;
}

json grid_to_json(const ActionGrid& g) {
    return json{{"a_v_levels", g.a_v_levels}, {"a_omega_levels", g.a_omega_levels}};
}

ActionGrid grid_from_json(const json& j) {
    ActionGrid g;
    g.a_v_levels = j.at("a_v_levels").get<std::vector<double>>();
    g.a_omega_levels = j.at("a_omega_levels").get<std::vector<double>>();
    return g;
}

json weights_to_json(const RewardWeights& w) {
    return json{{"k_d", w.k_d},
                {"k_theta", w.k_theta},
                {"k_v", w.k_v},
                {"k_lat", w.k_lat},
                {"k_omega", w.k_omega},
                {"k_av", w.k_av},
                {"k_aomega", w.k_aomega},
                {"k_step", w.k_step},
                {"k_timeout", w.k_timeout},
                {"k_ws", w.k_ws},
                {"k_wflip", w.k_wflip},
                {"k_head_inc", w.k_head_inc},
                {"k_head_stall", w.k_head_stall},
                {"delta_e_head", w.delta_e_head},
                {"k_wstop", w.k_wstop},
                {"e_pad", w.e_pad},
                {"k_wsign", w.k_wsign},
                {"e_db", w.e_db},
                {"omega_db", w.omega_db},
                {"e_lock", w.e_lock},
                {"d_lock", w.d_lock}};
}

RewardWeights weights_from_json(const json& j) {
    RewardWeights w;
    w.k_d = j.at("k_d").get<double>();
    w.k_theta = j.at("k_theta").get<double>();
    w.k_v = j.at("k_v").get<double>();
    w.k_lat = j.at("k_lat").get<double>();
    w.k_omega = j.at("k_omega").get<double>();
    w.k_av = j.at("k_av").get<double>();
    w.k_aomega = j.at("k_aomega").get<double>();
    w.k_step = j.at("k_step").get<double>();
    w.k_timeout = j.at("k_timeout").get<double>();
    w.k_ws = j.at("k_ws").get<double>();
    w.k_wflip = j.at("k_wflip").get<double>();
    w.k_head_inc = j.at("k_head_inc").get<double>();
    w.k_head_stall = j.at("k_head_stall").get<double>();
    w.delta_e_head = j.at("delta_e_head").get<double>();
    w.k_wstop = j.at("k_wstop").get<double>();
    w.e_pad = j.at("e_pad").get<double>();
    w.k_wsign = j.at("k_wsign").get<double>();
    w.e_db = j.at("e_db").get<double>();
    w.omega_db = j.at("omega_db").get<double>();
    w.e_lock = j.at("e_lock").get<double>();
    w.d_lock = j.at("d_lock").get<double>();
    return w;
}

json limits_to_json(const MotionLimits& lim) {
    return json{{"v_min", lim.v_min},
                {"v_max", lim.v_max},
                {"omega_min", lim.omega_min},
                {"omega_max", lim.omega_max},
                {"a_v_min", lim.a_v_min},
                {"a_v_max", lim.a_v_max},
                {"a_omega_min", lim.a_omega_min},
                {"a_omega_max", lim.a_omega_max},
                {"dt", lim.dt}};
}

MotionLimits limits_from_json(const json& j) {
    MotionLimits lim;
    lim.v_min = j.at("v_min").get<double>();
    lim.v_max = j.at("v_max").get<double>();
    lim.omega_min = j.at("omega_min").get<double>();
    lim.omega_max = j.at("omega_max").get<double>();
    lim.a_v_min = j.at("a_v_min").get<double>();
    lim.a_v_max = j.at("a_v_max").get<double>();
    lim.a_omega_min = j.at("a_omega_min").get<double>();
    lim.a_omega_max = j.at("a_omega_max").get<double>();
    lim.dt = j.at("dt").get<double>();
    return lim;
}

json config_to_json(const TrainConfig& c) {
    return json{{"alpha", c.alpha},
                {"gamma", c.gamma},
                {"episodes", c.episodes},
                {"eval_episodes", c.eval_episodes},
                {"eps0", c.eps0},
                {"eps_final", c.eps_final},
                {"timeout_steps", c.timeout_steps},
                {"eval_timeout_steps", c.eval_timeout_steps},
                {"rule", to_string(c.rule)},
                {"seed", c.seed},
                {"start_min_dist", c.start_min_dist},
                {"goal_margin", c.goal_margin},
                {"goal_sampling",
                 c.train_goal_sampling == GoalSampling::mixed ? "mixed" : "uniform"},
                {"mixed_fraction", c.mixed_fraction}};
}

TrainConfig config_from_json(const json& j) {
    TrainConfig c;
    c.alpha = j.at("alpha").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.episodes = j.at("episodes").get<int>();
    c.eval_episodes = j.at("eval_episodes").get<int>();
    c.eps0 = j.at("eps0").get<double>();
    c.eps_final = j.at("eps_final").get<double>();
    c.timeout_steps = j.at("timeout_steps").get<int>();
    c.eval_timeout_steps = j.value("eval_timeout_steps", 0);
    c.rule = update_rule_from_string(j.at("rule").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.start_min_dist = j.at("start_min_dist").get<double>();
    c.goal_margin = j.at("goal_margin").get<double>();
    c.train_goal_sampling = j.value("goal_sampling", "mixed") == std::string("uniform")
                                ? GoalSampling::uniform
                                : GoalSampling::mixed;
    c.mixed_fraction = j.value("mixed_fraction", 0.35);
    return c;
}

std::string layout_hash_of(const DiscretizerSpec& spec, const ActionGrid& grid) {
    json layout{{"discretizer", spec_to_json(spec)}, {"action_grid", grid_to_json(grid)}};
    return io::hex64(io::fnv1a64(layout.dump()));
}

}  // namespace

const char* to_string(UpdateRule rule) {
    return rule == UpdateRule::q_learning ? "qlearning" : "sarsa";
}

UpdateRule update_rule_from_string(const std::string& name) {
    if (name == "qlearning" || name == "q_learning" || name == "q-learning") {
        return UpdateRule::q_learning;
    }
    if (name == "sarsa") return UpdateRule::sarsa;
    throw std::invalid_argument("unknown update rule: " + name);
}

QTable::QTable(DiscretizerSpec spec, ActionGrid grid)
    : spec_(spec), grid_(std::move(grid)) {
    spec_.validate();
    if (grid_.size() < 1) {
        throw std::invalid_argument("QTable: empty action grid");
    }
    n_actions_ = static_cast<std::size_t>(grid_.size());
    values_.assign(static_cast<std::size_t>(spec_.state_count()) * n_actions_, 0.0);
}

std::string QTable::layout_hash() const { return layout_hash_of(spec_, grid_); }

void QTable::save(const std::string& path, const RewardWeights& weights,
                  const MotionLimits& limits, const TrainConfig& config) const {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "qtable";
    j["discretizer"] = spec_to_json(spec_);
    j["action_grid"] = grid_to_json(grid_);
    j["reward_weights"] = weights_to_json(weights);
    j["motion_limits"] = limits_to_json(limits);
    j["train_config"] = config_to_json(config);
    j["layout_hash"] = layout_hash();
    j["values"] = values_;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("QTable::save: cannot open " + path);
    }
    out << j.dump();
}

QTable::Loaded QTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("QTable::load: cannot open " + path);
    }
    json j = json::parse(in);
    if (j.value("kind", "") != "qtable") {
        throw std::runtime_error("QTable::load: not a qtable file: " + path);
    }
    if (j.at("format_version").get<int>() != kFormatVersion) {
        throw std::runtime_error("QTable::load: unsupported format version in " + path);
    }
    QTable table(spec_from_json(j.at("discretizer")), grid_from_json(j.at("action_grid")));
    const auto embedded = j.at("layout_hash").get<std::string>();
    if (embedded != table.layout_hash()) {
        throw std::runtime_error("QTable::load: layout hash mismatch in " + path);
    }
    auto values = j.at("values").get<std::vector<double>>();
    if (values.size() != table.values_.size()) {
        throw std::runtime_error("QTable::load: value matrix size mismatch in " + path);
    }
    table.values_ = std::move(values);
    return Loaded{std::move(table), weights_from_json(j.at("reward_weights")),
                  limits_from_json(j.at("motion_limits")),
                  config_from_json(j.at("train_config"))};
}

}  // namespace skidstack::rl
