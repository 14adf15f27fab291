#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specband/core.hpp"
#include "specband/errors.hpp"
#include "specband/rng.hpp"
#include "specband/spectral.hpp"

namespace specband {

enum class PolicyKind {
    ucb1,
    generalized_ucb,
    epsilon_greedy,
    greedy,
    uniform_random,
    fd_adaptive_ucb,
};

inline const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::ucb1: return "ucb1";
        case PolicyKind::generalized_ucb: return "generalized_ucb";
        case PolicyKind::epsilon_greedy: return "epsilon_greedy";
        case PolicyKind::greedy: return "greedy";
        case PolicyKind::uniform_random: return "uniform_random";
        case PolicyKind::fd_adaptive_ucb: return "fd_adaptive_ucb";
    }
    return "unknown";
}

struct PolicyConfig {
    PolicyKind kind = PolicyKind::ucb1;
    double c = 1.0;           // exploration constant
    double alpha_exp = 0.5;   // gain decay exponent; 0.5 recovers UCB1
    double epsilon = 0.0;     // exploration probability (epsilon_greedy)
    double c_min = 0.5;       // adaptive range (fd_adaptive_ucb)
    double c_max = 2.0;
    double sigma = 0.5;       // assumed sub-Gaussian scale, recorded in metadata

    static PolicyConfig ucb1(double c = 1.0) {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::ucb1;
        cfg.c = c;
        cfg.alpha_exp = 0.5;
        return cfg;
    }
    static PolicyConfig generalized_ucb(double c, double alpha_exp) {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::generalized_ucb;
        cfg.c = c;
        cfg.alpha_exp = alpha_exp;
        return cfg;
    }
    static PolicyConfig epsilon_greedy(double epsilon) {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::epsilon_greedy;
        cfg.epsilon = epsilon;
        return cfg;
    }
    static PolicyConfig greedy() {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::greedy;
        return cfg;
    }
    static PolicyConfig uniform_random() {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::uniform_random;
        return cfg;
    }
    static PolicyConfig fd_adaptive(double c_min, double c_max) {
        PolicyConfig cfg;
        cfg.kind = PolicyKind::fd_adaptive_ucb;
        cfg.c_min = c_min;
        cfg.c_max = c_max;
        return cfg;
    }

    void validate() const {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) {
            throw ConfigError("sigma: must be finite and > 0");
        }
        switch (kind) {
            case PolicyKind::ucb1:
                if (!(c > 0.0)) throw ConfigError("c: exploration constant must be > 0");
                if (alpha_exp != 0.5) {
                    throw ConfigError("alpha_exp: ucb1 fixes the decay exponent at 0.5");
                }
                break;
            case PolicyKind::generalized_ucb:
                if (!(c > 0.0)) throw ConfigError("c: exploration constant must be > 0");
                if (!(alpha_exp > 0.0 && alpha_exp <= 1.0)) {
                    throw ConfigError("alpha_exp: decay exponent must lie in (0, 1]");
                }
                break;
            case PolicyKind::epsilon_greedy:
                if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
                    throw ConfigError("epsilon: must lie in [0, 1]");
                }
                break;
            case PolicyKind::greedy:
            case PolicyKind::uniform_random:
                break;
            case PolicyKind::fd_adaptive_ucb:
                if (!(c_min >= 0.0)) throw ConfigError("c_min: must be >= 0");
                if (c_min > c_max) throw ConfigError("c_min: must not exceed c_max");
                if (!(alpha_exp > 0.0 && alpha_exp <= 1.0)) {
                    throw ConfigError("alpha_exp: decay exponent must lie in (0, 1]");
                }
                break;
        }
    }
};

// Exploration gain G(N, t) = c * (ln t)^(1/2) / N^alpha. At alpha = 0.5 this
// is the UCB1 confidence radius c * sqrt(ln t / N).
inline double ucb_gain(std::int64_t pulls, std::int64_t t, double c, double alpha_exp) {
    if (pulls < 1) {
        throw std::invalid_argument(
            "ucb_gain called for an unpulled arm; the initialization phase must run first");
    }
    if (t < 1) {
        throw std::invalid_argument("ucb_gain requires t >= 1");
    }
    return c * std::sqrt(std::log(static_cast<double>(t))) /
           std::pow(static_cast<double>(pulls), alpha_exp);
}

// The score split into its filter parts: low-frequency baseband (empirical
// mean), high-frequency gain, and their sum.
struct UcbScore {
    double baseband = 0.0;
    double gain = 0.0;
    double total = 0.0;
};

inline UcbScore ucb_score(const ArmStatistics& stats, std::int64_t t, const PolicyConfig& config) {
    const double baseband = stats.mean();
    const double gain = ucb_gain(stats.pulls, t, config.c, config.alpha_exp);
    return UcbScore{baseband, gain, baseband + gain};
}

namespace detail {

inline void require_arms(const std::vector<ArmStatistics>& all_stats) {
    if (all_stats.empty()) {
        throw std::invalid_argument("selection over an empty arm list");
    }
}

inline std::optional<std::size_t> first_unpulled(const std::vector<ArmStatistics>& all_stats) {
    for (std::size_t i = 0; i < all_stats.size(); ++i) {
        if (all_stats[i].pulls == 0) return i;
    }
    return std::nullopt;
}

// Argmax of empirical means, ties broken by lowest index.
inline std::size_t greedy_arm(const std::vector<ArmStatistics>& all_stats) {
    std::size_t best = 0;
    double best_mean = all_stats[0].mean();
    for (std::size_t i = 1; i < all_stats.size(); ++i) {
        const double m = all_stats[i].mean();
        if (m > best_mean) {
            best = i;
            best_mean = m;
        }
    }
    return best;
}

inline std::size_t argmax_ucb(const std::vector<ArmStatistics>& all_stats, std::int64_t t,
                              const PolicyConfig& config) {
    std::size_t best = 0;
    double best_total = ucb_score(all_stats[0], t, config).total;
    for (std::size_t i = 1; i < all_stats.size(); ++i) {
        const double total = ucb_score(all_stats[i], t, config).total;
        if (total > best_total) {
            best = i;
            best_total = total;
        }
    }
    return best;
}

}  // namespace detail

// UCB selection. Unpulled arms force the initialization phase: the lowest
// such index is returned without scoring.
inline std::size_t select_ucb(const std::vector<ArmStatistics>& all_stats, std::int64_t t,
                              const PolicyConfig& config) {
    detail::require_arms(all_stats);
    if (auto unpulled = detail::first_unpulled(all_stats)) return *unpulled;
    return detail::argmax_ucb(all_stats, t, config);
}

inline std::size_t select_epsilon_greedy(const std::vector<ArmStatistics>& all_stats,
                                         double epsilon, RandomStream& stream) {
    detail::require_arms(all_stats);
    if (auto unpulled = detail::first_unpulled(all_stats)) return *unpulled;
    if (stream.next_uniform() < epsilon) {
        return stream.next_index(all_stats.size());
    }
    return detail::greedy_arm(all_stats);
}

// UCB with the exploration constant interpolated between c_min and c_max by
// the supplied spectral flatness of the arm set's frequency vector.
inline std::size_t select_fd_adaptive(const std::vector<ArmStatistics>& all_stats, std::int64_t t,
                                      const PolicyConfig& config, double flatness) {
    if (config.c_min > config.c_max) {
        throw ConfigError("c_min: must not exceed c_max");
    }
    detail::require_arms(all_stats);
    if (auto unpulled = detail::first_unpulled(all_stats)) return *unpulled;
    const double f = flatness < 0.0 ? 0.0 : (flatness > 1.0 ? 1.0 : flatness);
    PolicyConfig effective = config;
    effective.c = config.c_min + (config.c_max - config.c_min) * f;
    return detail::argmax_ucb(all_stats, t, effective);
}

// Closed-form per-arm selection probabilities at time t. Deterministic
// policies yield the one-hot vector on the arm they would pick.
inline std::vector<double> energy_closed_form(const PolicyConfig& config,
                                              const std::vector<ArmStatistics>& all_stats,
                                              std::int64_t t) {
    detail::require_arms(all_stats);
    if (detail::first_unpulled(all_stats)) {
        throw std::invalid_argument(
            "energy_closed_form requires every arm to have been pulled at least once");
    }
    const std::size_t k = all_stats.size();
    std::vector<double> energy(k, 0.0);
    switch (config.kind) {
        case PolicyKind::epsilon_greedy: {
            const std::size_t g = detail::greedy_arm(all_stats);
            for (std::size_t i = 0; i < k; ++i) {
                energy[i] = config.epsilon / static_cast<double>(k);
            }
            energy[g] += 1.0 - config.epsilon;
            break;
        }
        case PolicyKind::uniform_random:
            for (std::size_t i = 0; i < k; ++i) {
                energy[i] = 1.0 / static_cast<double>(k);
            }
            break;
        case PolicyKind::greedy:
            energy[detail::greedy_arm(all_stats)] = 1.0;
            break;
        case PolicyKind::ucb1:
        case PolicyKind::generalized_ucb:
            energy[select_ucb(all_stats, t, config)] = 1.0;
            break;
        case PolicyKind::fd_adaptive_ucb: {
            const double flatness = spectral_flatness(frequencies(all_stats));
            energy[select_fd_adaptive(all_stats, t, config, flatness)] = 1.0;
            break;
        }
    }
    return energy;
}

// One-step policy dispatch used by the interaction loop. The stream is only
// consumed by stochastic policies.
inline std::size_t select_arm(const PolicyConfig& config,
                              const std::vector<ArmStatistics>& all_stats, std::int64_t t,
                              RandomStream& stream) {
    detail::require_arms(all_stats);
    if (auto unpulled = detail::first_unpulled(all_stats)) return *unpulled;
    switch (config.kind) {
        case PolicyKind::ucb1:
        case PolicyKind::generalized_ucb:
            return select_ucb(all_stats, t, config);
        case PolicyKind::epsilon_greedy:
            return select_epsilon_greedy(all_stats, config.epsilon, stream);
        case PolicyKind::greedy:
            return detail::greedy_arm(all_stats);
        case PolicyKind::uniform_random:
            return stream.next_index(all_stats.size());
        case PolicyKind::fd_adaptive_ucb: {
            const double flatness = spectral_flatness(frequencies(all_stats));
            return select_fd_adaptive(all_stats, t, config, flatness);
        }
    }
    throw std::logic_error("unreachable policy kind");
}

}  // namespace specband
