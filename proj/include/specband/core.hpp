#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "specband/errors.hpp"

namespace specband {

enum class ArmKind {
    bernoulli,
    gaussian,
};

// One arm's ground-truth reward distribution. The mean doubles as the
// Bernoulli success probability.
struct ArmDistribution {
    ArmKind kind = ArmKind::bernoulli;
    double mean = 0.0;
    double stddev = 0.0;  // gaussian only

    static ArmDistribution bernoulli(double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("p: Bernoulli success probability must lie in [0, 1]");
        }
        return ArmDistribution{ArmKind::bernoulli, p, 0.0};
    }

    static ArmDistribution gaussian(double mean, double stddev) {
        if (!(stddev >= 0.0) || !std::isfinite(stddev)) {
            throw ConfigError("stddev: Gaussian stddev must be finite and >= 0");
        }
        if (!std::isfinite(mean)) {
            throw ConfigError("mean: Gaussian mean must be finite");
        }
        return ArmDistribution{ArmKind::gaussian, mean, stddev};
    }

    // Sub-Gaussian scale: 1/2 for Bernoulli (Hoeffding), the stddev for
    // Gaussian arms.
    double sub_gaussian_sigma() const {
        return kind == ArmKind::bernoulli ? 0.5 : stddev;
    }
};

// A K-armed problem instance: true means, gaps and the canonical optimal arm.
class BanditInstance {
public:
    explicit BanditInstance(std::vector<ArmDistribution> arms) : arms_(std::move(arms)) {
        if (arms_.size() < 2) {
            throw ConfigError("arms: a bandit instance needs at least 2 arms");
        }
        for (const auto& arm : arms_) {
            if (!std::isfinite(arm.sub_gaussian_sigma()) || arm.sub_gaussian_sigma() < 0.0) {
                throw ConfigError("stddev: arm sub-Gaussian scale must be finite and >= 0");
            }
        }
    }

    std::size_t num_arms() const { return arms_.size(); }
    const std::vector<ArmDistribution>& arms() const { return arms_; }
    const ArmDistribution& arm(std::size_t i) const { return arms_.at(i); }

    // Lowest index among the maximizers of the true means.
    std::size_t optimal_arm() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < arms_.size(); ++i) {
            if (arms_[i].mean > arms_[best].mean) best = i;
        }
        return best;
    }

    double optimal_mean() const { return arms_[optimal_arm()].mean; }

private:
    std::vector<ArmDistribution> arms_;
};

// Per-arm gaps delta_i = mu* - mu_i; exactly 0 at the canonical optimal arm.
inline std::vector<double> gaps(const BanditInstance& instance) {
    const double best = instance.optimal_mean();
    std::vector<double> out;
    out.reserve(instance.num_arms());
    for (const auto& arm : instance.arms()) {
        out.push_back(best - arm.mean);
    }
    return out;
}

// Per-arm sufficient statistics. The empirical mean is kept as
// (pulls, reward_sum) so trace replays reproduce it exactly.
struct ArmStatistics {
    std::int64_t pulls = 0;
    double reward_sum = 0.0;

    double mean() const {
        if (pulls < 1) {
            throw std::invalid_argument("empirical mean undefined before the first pull");
        }
        return reward_sum / static_cast<double>(pulls);
    }
};

inline ArmStatistics update_arm(ArmStatistics stats, double reward) {
    stats.pulls += 1;
    stats.reward_sum += reward;
    return stats;
}

}  // namespace specband
