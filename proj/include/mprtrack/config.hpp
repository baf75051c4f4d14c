#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mprtrack/optimizer.hpp"

namespace mprtrack {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { RteCurves, GammaSweep, WeightSweep, Validate, Solve };

enum class PolicyName { Optimized, Random, Greedy1, Greedy2, Tdma };

struct CurveParams {
    double alpha = 0.0;
    double beta = 0.0;
};

struct SolverSettings {
    int grid_resolution = 101;
    int refine_rounds = 3;
    int tdma_resolution = 101;
};

struct SimSettings {
    std::uint64_t horizon = 1'000'000;
    std::uint64_t warmup = 10'000;
    std::uint64_t seed = 1;
};

inline Scenario default_scenario() {
    Scenario s;
    s.source_1 = SourceParams{0.8, 0.6, 0.5, 1.0, 1.0};
    s.source_2 = SourceParams{0.3, 0.2, 0.5, 1.0, 1.0};
    s.channel = MprChannel{0.9, 0.85, 0.6, 0.55};
    s.budget = Budget{0.5, 0.5};
    s.objective_kind = ObjectiveKind::Rte;
    return s;
}

struct ExperimentConfig {
    std::optional<ExperimentKind> experiment;
    Scenario scenario = default_scenario();
    std::vector<double> sweep_grid;    // empty: per-experiment default
    std::vector<CurveParams> curves;   // empty: default curve set
    std::vector<PolicyName> policies;  // empty: all five
    SolverSettings solver;
    SimSettings sim;
};

inline std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::RteCurves: return "rte-curves";
        case ExperimentKind::GammaSweep: return "gamma-sweep";
        case ExperimentKind::WeightSweep: return "weight-sweep";
        case ExperimentKind::Validate: return "validate";
        case ExperimentKind::Solve: return "solve";
    }
    throw std::logic_error("unreachable");
}

inline std::string to_string(PolicyName name) {
    switch (name) {
        case PolicyName::Optimized: return "optimized";
        case PolicyName::Random: return "random";
        case PolicyName::Greedy1: return "greedy1";
        case PolicyName::Greedy2: return "greedy2";
        case PolicyName::Tdma: return "tdma";
    }
    throw std::logic_error("unreachable");
}

inline std::vector<double> default_q_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    return grid;
}

inline std::vector<double> default_gamma_grid() {
    std::vector<double> grid{0.01};
    for (int i = 1; i <= 19; ++i) grid.push_back(i * 5 / 100.0);
    return grid;
}

inline std::vector<double> default_weight_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i * 5 / 100.0);
    return grid;
}

inline std::vector<CurveParams> default_curves() {
    return {{0.1, 0.1}, {0.3, 0.2}, {0.5, 0.5}, {0.8, 0.6}, {0.9, 0.9}};
}

inline std::vector<PolicyName> default_policies() {
    return {PolicyName::Optimized, PolicyName::Random, PolicyName::Greedy1,
            PolicyName::Greedy2, PolicyName::Tdma};
}

namespace detail {

using Json = nlohmann::json;

inline void require_known_keys(const Json& obj, const char* where,
                               std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(std::string("unknown key \"") + item.key() +
                              "\" in " + where);
        }
    }
}

inline double read_number(const Json& obj, const char* where, const char* key,
                          double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string(where) + "." + key + " must be a number");
    }
    return v.get<double>();
}

inline std::uint64_t read_count(const Json& obj, const char* where,
                                const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(std::string(where) + "." + key +
                          " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

inline int read_resolution(const Json& obj, const char* where, const char* key,
                           int fallback, int minimum) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(std::string(where) + "." + key +
                          " must be an integer");
    }
    const auto value = v.get<std::int64_t>();
    if (value < minimum) {
        throw ConfigError(std::string(where) + "." + key + " must be at least " +
                          std::to_string(minimum));
    }
    return static_cast<int>(value);
}

inline SourceParams parse_source(const Json& obj, const char* where,
                                 const SourceParams& fallback) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + " must be an object");
    }
    require_known_keys(obj, where, {"alpha", "beta", "weight", "cost_01", "cost_10"});
    SourceParams src = fallback;
    src.alpha = read_number(obj, where, "alpha", fallback.alpha);
    src.beta = read_number(obj, where, "beta", fallback.beta);
    src.weight = read_number(obj, where, "weight", fallback.weight);
    src.cost_01 = read_number(obj, where, "cost_01", fallback.cost_01);
    src.cost_10 = read_number(obj, where, "cost_10", fallback.cost_10);
    return src;
}

inline Scenario parse_scenario(const Json& obj, const Scenario& fallback) {
    if (!obj.is_object()) {
        throw ConfigError("scenario must be an object");
    }
    require_known_keys(obj, "scenario",
                       {"source_1", "source_2", "channel", "budget", "objective"});
    Scenario s = fallback;
    if (obj.contains("source_1")) {
        s.source_1 = parse_source(obj.at("source_1"), "scenario.source_1", fallback.source_1);
    }
    if (obj.contains("source_2")) {
        s.source_2 = parse_source(obj.at("source_2"), "scenario.source_2", fallback.source_2);
    }
    if (obj.contains("channel")) {
        const auto& ch = obj.at("channel");
        if (!ch.is_object()) throw ConfigError("scenario.channel must be an object");
        require_known_keys(ch, "scenario.channel",
                           {"p_solo_1", "p_solo_2", "p_joint_1", "p_joint_2"});
        s.channel.p_solo_1 = read_number(ch, "scenario.channel", "p_solo_1", fallback.channel.p_solo_1);
        s.channel.p_solo_2 = read_number(ch, "scenario.channel", "p_solo_2", fallback.channel.p_solo_2);
        s.channel.p_joint_1 = read_number(ch, "scenario.channel", "p_joint_1", fallback.channel.p_joint_1);
        s.channel.p_joint_2 = read_number(ch, "scenario.channel", "p_joint_2", fallback.channel.p_joint_2);
    }
    if (obj.contains("budget")) {
        const auto& b = obj.at("budget");
        if (!b.is_object()) throw ConfigError("scenario.budget must be an object");
        require_known_keys(b, "scenario.budget", {"gamma_1", "gamma_2"});
        s.budget.gamma_1 = read_number(b, "scenario.budget", "gamma_1", fallback.budget.gamma_1);
        s.budget.gamma_2 = read_number(b, "scenario.budget", "gamma_2", fallback.budget.gamma_2);
    }
    if (obj.contains("objective")) {
        const auto& o = obj.at("objective");
        if (!o.is_string()) throw ConfigError("scenario.objective must be a string");
        const auto text = o.get<std::string>();
        if (text == "rte") {
            s.objective_kind = ObjectiveKind::Rte;
        } else if (text == "cae") {
            s.objective_kind = ObjectiveKind::Cae;
        } else {
            throw ConfigError("scenario.objective must be \"rte\" or \"cae\", got \"" + text + "\"");
        }
    }
    return s;
}

inline ExperimentKind parse_experiment_kind(const std::string& text) {
    for (auto kind : {ExperimentKind::RteCurves, ExperimentKind::GammaSweep,
                      ExperimentKind::WeightSweep, ExperimentKind::Validate,
                      ExperimentKind::Solve}) {
        if (text == to_string(kind)) return kind;
    }
    throw ConfigError("unknown experiment \"" + text + "\"");
}

inline PolicyName parse_policy_name(const std::string& text) {
    for (auto name : {PolicyName::Optimized, PolicyName::Random, PolicyName::Greedy1,
                      PolicyName::Greedy2, PolicyName::Tdma}) {
        if (text == to_string(name)) return name;
    }
    throw ConfigError("unknown policy \"" + text + "\"");
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& json_text) {
    namespace nj = nlohmann;
    nj::json root;
    try {
        root = nj::json::parse(json_text);
    } catch (const nj::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    detail::require_known_keys(root, "config",
                               {"experiment", "scenario", "sweep_grid", "curves",
                                "policies", "solver", "sim"});

    ExperimentConfig cfg;
    if (root.contains("experiment")) {
        const auto& e = root.at("experiment");
        if (!e.is_string()) throw ConfigError("experiment must be a string");
        cfg.experiment = detail::parse_experiment_kind(e.get<std::string>());
    }
    if (root.contains("scenario")) {
        cfg.scenario = detail::parse_scenario(root.at("scenario"), cfg.scenario);
    }
    if (root.contains("sweep_grid")) {
        const auto& g = root.at("sweep_grid");
        if (!g.is_array() || g.empty()) {
            throw ConfigError("sweep_grid must be a nonempty array of numbers");
        }
        for (const auto& v : g) {
            if (!v.is_number()) throw ConfigError("sweep_grid entries must be numbers");
            cfg.sweep_grid.push_back(v.get<double>());
        }
        for (std::size_t i = 1; i < cfg.sweep_grid.size(); ++i) {
            if (!(cfg.sweep_grid[i - 1] < cfg.sweep_grid[i])) {
                throw ConfigError("sweep_grid must be strictly increasing");
            }
        }
    }
    if (root.contains("curves")) {
        const auto& c = root.at("curves");
        if (!c.is_array() || c.empty()) {
            throw ConfigError("curves must be a nonempty array of objects");
        }
        for (const auto& item : c) {
            if (!item.is_object()) throw ConfigError("curves entries must be objects");
            detail::require_known_keys(item, "curves[]", {"alpha", "beta"});
            if (!item.contains("alpha") || !item.contains("beta")) {
                throw ConfigError("curves entries need both alpha and beta");
            }
            cfg.curves.push_back(CurveParams{
                detail::read_number(item, "curves[]", "alpha", 0.0),
                detail::read_number(item, "curves[]", "beta", 0.0)});
        }
    }
    if (root.contains("policies")) {
        const auto& p = root.at("policies");
        if (!p.is_array() || p.empty()) {
            throw ConfigError("policies must be a nonempty array of strings");
        }
        for (const auto& v : p) {
            if (!v.is_string()) throw ConfigError("policies entries must be strings");
            cfg.policies.push_back(detail::parse_policy_name(v.get<std::string>()));
        }
    }
    if (root.contains("solver")) {
        const auto& s = root.at("solver");
        if (!s.is_object()) throw ConfigError("solver must be an object");
        detail::require_known_keys(s, "solver",
                                   {"grid_resolution", "refine_rounds", "tdma_resolution"});
        cfg.solver.grid_resolution =
            detail::read_resolution(s, "solver", "grid_resolution", cfg.solver.grid_resolution, 2);
        cfg.solver.refine_rounds =
            detail::read_resolution(s, "solver", "refine_rounds", cfg.solver.refine_rounds, 0);
        cfg.solver.tdma_resolution =
            detail::read_resolution(s, "solver", "tdma_resolution", cfg.solver.tdma_resolution, 2);
    }
    if (root.contains("sim")) {
        const auto& s = root.at("sim");
        if (!s.is_object()) throw ConfigError("sim must be an object");
        detail::require_known_keys(s, "sim", {"horizon", "warmup", "seed"});
        cfg.sim.horizon = detail::read_count(s, "sim", "horizon", cfg.sim.horizon);
        cfg.sim.warmup = detail::read_count(s, "sim", "warmup", cfg.sim.warmup);
        cfg.sim.seed = detail::read_count(s, "sim", "seed", cfg.sim.seed);
    }

    try {
        validate(cfg.scenario);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

}  // namespace mprtrack
