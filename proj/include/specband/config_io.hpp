#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specband/core.hpp"
#include "specband/errors.hpp"
#include "specband/experiment.hpp"
#include "specband/policy.hpp"

namespace specband {

namespace detail {

using json = nlohmann::json;

// Unknown keys are an error, not a warning: a silently ignored typo would
// make the run irreproducible from its config.
inline void reject_unknown_keys(const json& obj, const std::string& context,
                                const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError(context + "." + key + ": unknown key");
        }
    }
}

inline const json& require_key(const json& obj, const std::string& context,
                               const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(context + "." + key + ": required key missing");
    }
    return *it;
}

inline double as_number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        throw ConfigError(field + ": expected a number");
    }
    return value.get<double>();
}

inline std::int64_t as_integer(const json& value, const std::string& field) {
    if (!value.is_number_integer()) {
        throw ConfigError(field + ": expected an integer");
    }
    return value.get<std::int64_t>();
}

inline std::uint64_t as_seed(const json& value, const std::string& field) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        throw ConfigError(field + ": expected an integer seed");
    }
    return value.get<std::uint64_t>();
}

inline bool as_bool(const json& value, const std::string& field) {
    if (!value.is_boolean()) {
        throw ConfigError(field + ": expected a boolean");
    }
    return value.get<bool>();
}

inline std::string as_string(const json& value, const std::string& field) {
    if (!value.is_string()) {
        throw ConfigError(field + ": expected a string");
    }
    return value.get<std::string>();
}

inline ArmDistribution arm_from_json(const json& obj, const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected an object");
    const std::string kind = as_string(require_key(obj, context, "kind"), context + ".kind");
    if (kind == "bernoulli") {
        reject_unknown_keys(obj, context, {"kind", "p"});
        return ArmDistribution::bernoulli(as_number(require_key(obj, context, "p"), context + ".p"));
    }
    if (kind == "gaussian") {
        reject_unknown_keys(obj, context, {"kind", "mean", "stddev"});
        return ArmDistribution::gaussian(
            as_number(require_key(obj, context, "mean"), context + ".mean"),
            as_number(require_key(obj, context, "stddev"), context + ".stddev"));
    }
    throw ConfigError(context + ".kind: unknown arm kind '" + kind + "'");
}

inline BanditInstance instance_from_json(const json& obj) {
    if (!obj.is_object()) throw ConfigError("instance: expected an object");
    reject_unknown_keys(obj, "instance", {"arms"});
    const json& arms_json = require_key(obj, "instance", "arms");
    if (!arms_json.is_array()) throw ConfigError("instance.arms: expected an array");
    std::vector<ArmDistribution> arms;
    arms.reserve(arms_json.size());
    for (std::size_t i = 0; i < arms_json.size(); ++i) {
        arms.push_back(arm_from_json(arms_json[i], "instance.arms[" + std::to_string(i) + "]"));
    }
    return BanditInstance(std::move(arms));
}

inline PolicyConfig policy_from_json(const json& obj) {
    if (!obj.is_object()) throw ConfigError("policy: expected an object");
    const std::string kind =
        as_string(require_key(obj, "policy", "kind"), "policy.kind");

    PolicyConfig cfg;
    auto opt_number = [&](const char* key, double fallback) {
        const auto it = obj.find(key);
        return it == obj.end() ? fallback : as_number(*it, std::string("policy.") + key);
    };

    if (kind == "ucb1") {
        reject_unknown_keys(obj, "policy", {"kind", "c", "alpha_exp", "sigma"});
        cfg = PolicyConfig::ucb1(opt_number("c", 1.0));
        cfg.alpha_exp = opt_number("alpha_exp", 0.5);
    } else if (kind == "generalized_ucb") {
        reject_unknown_keys(obj, "policy", {"kind", "c", "alpha_exp", "sigma"});
        cfg = PolicyConfig::generalized_ucb(opt_number("c", 1.0), opt_number("alpha_exp", 0.5));
    } else if (kind == "epsilon_greedy") {
        reject_unknown_keys(obj, "policy", {"kind", "epsilon", "sigma"});
        cfg = PolicyConfig::epsilon_greedy(
            as_number(require_key(obj, "policy", "epsilon"), "policy.epsilon"));
    } else if (kind == "greedy") {
        reject_unknown_keys(obj, "policy", {"kind", "sigma"});
        cfg = PolicyConfig::greedy();
    } else if (kind == "uniform_random") {
        reject_unknown_keys(obj, "policy", {"kind", "sigma"});
        cfg = PolicyConfig::uniform_random();
    } else if (kind == "fd_adaptive_ucb") {
        reject_unknown_keys(obj, "policy", {"kind", "c_min", "c_max", "alpha_exp", "sigma"});
        cfg = PolicyConfig::fd_adaptive(
            as_number(require_key(obj, "policy", "c_min"), "policy.c_min"),
            as_number(require_key(obj, "policy", "c_max"), "policy.c_max"));
        cfg.alpha_exp = opt_number("alpha_exp", 0.5);
    } else {
        throw ConfigError("policy.kind: unknown policy kind '" + kind + "'");
    }
    cfg.sigma = opt_number("sigma", 0.5);
    cfg.validate();
    return cfg;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& root) {
    using detail::as_bool;
    using detail::as_integer;
    using detail::as_seed;
    using detail::require_key;
    if (!root.is_object()) throw ConfigError("config: expected a JSON object");
    detail::reject_unknown_keys(root, "config",
                                {"instance", "policy", "horizon", "replications", "master_seed",
                                 "record_spectral", "snapshot_stride"});
    ExperimentConfig config(
        detail::instance_from_json(require_key(root, "config", "instance")),
        detail::policy_from_json(require_key(root, "config", "policy")),
        as_integer(require_key(root, "config", "horizon"), "horizon"),
        as_integer(require_key(root, "config", "replications"), "replications"),
        as_seed(require_key(root, "config", "master_seed"), "master_seed"));
    if (const auto it = root.find("record_spectral"); it != root.end()) {
        config.record_spectral = as_bool(*it, "record_spectral");
    }
    if (const auto it = root.find("snapshot_stride"); it != root.end()) {
        config.snapshot_stride = as_integer(*it, "snapshot_stride");
    }
    config.validate();
    return config;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file: " + path);
    }
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(root);
}

inline nlohmann::json instance_to_json(const BanditInstance& instance) {
    nlohmann::json arms = nlohmann::json::array();
    for (const auto& arm : instance.arms()) {
        nlohmann::json a;
        if (arm.kind == ArmKind::bernoulli) {
            a["kind"] = "bernoulli";
            a["p"] = arm.mean;
        } else {
            a["kind"] = "gaussian";
            a["mean"] = arm.mean;
            a["stddev"] = arm.stddev;
        }
        arms.push_back(std::move(a));
    }
    return nlohmann::json{{"arms", std::move(arms)}};
}

inline nlohmann::json policy_to_json(const PolicyConfig& policy) {
    nlohmann::json p;
    p["kind"] = to_string(policy.kind);
    p["sigma"] = policy.sigma;
    switch (policy.kind) {
        case PolicyKind::ucb1:
            p["c"] = policy.c;
            break;
        case PolicyKind::generalized_ucb:
            p["c"] = policy.c;
            p["alpha_exp"] = policy.alpha_exp;
            break;
        case PolicyKind::epsilon_greedy:
            p["epsilon"] = policy.epsilon;
            break;
        case PolicyKind::greedy:
        case PolicyKind::uniform_random:
            break;
        case PolicyKind::fd_adaptive_ucb:
            p["c_min"] = policy.c_min;
            p["c_max"] = policy.c_max;
            p["alpha_exp"] = policy.alpha_exp;
            break;
    }
    return p;
}

inline nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json root;
    root["instance"] = instance_to_json(config.instance);
    root["policy"] = policy_to_json(config.policy);
    root["horizon"] = config.horizon;
    root["replications"] = config.replications;
    root["master_seed"] = config.master_seed;
    root["record_spectral"] = config.record_spectral;
    root["snapshot_stride"] = config.resolved_stride();
    return root;
}

}  // namespace specband
