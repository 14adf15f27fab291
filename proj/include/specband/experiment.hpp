#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <thread>
#include <utility>
#include <vector>

#include "specband/core.hpp"
#include "specband/csvio.hpp"
#include "specband/env.hpp"
#include "specband/errors.hpp"
#include "specband/hashing.hpp"
#include "specband/policy.hpp"
#include "specband/regret.hpp"
#include "specband/rng.hpp"
#include "specband/spectral.hpp"
#include "specband/trace.hpp"

namespace specband {

// Declarative description of one experiment: instance, policy, horizon,
// replication count and the master seed all outputs derive from.
struct ExperimentConfig {
    BanditInstance instance;
    PolicyConfig policy;
    std::int64_t horizon = 0;
    std::int64_t replications = 1;
    std::uint64_t master_seed = 0;
    bool record_spectral = false;
    std::int64_t snapshot_stride = 0;  // 0 picks the default rule

    ExperimentConfig(BanditInstance inst, PolicyConfig pol, std::int64_t horizon_,
                     std::int64_t replications_ = 1, std::uint64_t master_seed_ = 0)
        : instance(std::move(inst)),
          policy(pol),
          horizon(horizon_),
          replications(replications_),
          master_seed(master_seed_) {}

    // Stride 1 up to horizons of 10^4, 10 beyond, unless set explicitly.
    std::int64_t resolved_stride() const {
        if (snapshot_stride > 0) return snapshot_stride;
        return horizon <= 10000 ? 1 : 10;
    }

    void validate() const {
        policy.validate();
        if (horizon < static_cast<std::int64_t>(instance.num_arms())) {
            throw ConfigError("horizon: must be at least the number of arms");
        }
        if (replications < 1) {
            throw ConfigError("replications: must be >= 1");
        }
        if (snapshot_stride < 0) {
            throw ConfigError("snapshot_stride: must be >= 1 (or omitted)");
        }
        if (horizon % resolved_stride() != 0) {
            throw ConfigError("snapshot_stride: must divide the horizon");
        }
    }
};

// Canonical one-line descriptions feeding the metadata hashes; independent of
// any config file formatting.
inline std::string canonical_description(const BanditInstance& instance) {
    std::string out = "arms:";
    for (const auto& arm : instance.arms()) {
        if (arm.kind == ArmKind::bernoulli) {
            out += " bernoulli " + format_double(arm.mean);
        } else {
            out += " gaussian " + format_double(arm.mean) + " " + format_double(arm.stddev);
        }
        out += ";";
    }
    return out;
}

inline std::string canonical_description(const ExperimentConfig& config) {
    std::string out = canonical_description(config.instance);
    const PolicyConfig& p = config.policy;
    out += "|policy: ";
    out += to_string(p.kind);
    switch (p.kind) {
        case PolicyKind::ucb1:
            out += " c=" + format_double(p.c);
            break;
        case PolicyKind::generalized_ucb:
            out += " c=" + format_double(p.c) + " alpha=" + format_double(p.alpha_exp);
            break;
        case PolicyKind::epsilon_greedy:
            out += " epsilon=" + format_double(p.epsilon);
            break;
        case PolicyKind::greedy:
        case PolicyKind::uniform_random:
            break;
        case PolicyKind::fd_adaptive_ucb:
            out += " c_min=" + format_double(p.c_min) + " c_max=" + format_double(p.c_max) +
                   " alpha=" + format_double(p.alpha_exp);
            break;
    }
    out += " sigma=" + format_double(p.sigma);
    out += "|horizon=" + format_int(config.horizon);
    out += "|replications=" + format_int(config.replications);
    out += "|master_seed=" + format_int(static_cast<std::int64_t>(config.master_seed));
    out += "|record_spectral=" + std::string(config.record_spectral ? "1" : "0");
    out += "|stride=" + format_int(config.resolved_stride());
    return out;
}

inline std::string instance_hash(const BanditInstance& instance) {
    return hex64(fnv1a64(canonical_description(instance)));
}

inline std::string config_hash(const ExperimentConfig& config) {
    return hex64(fnv1a64(canonical_description(config)));
}

// Grid of multiples of the stride up to the horizon; V series, ensemble
// energies and stored snapshots are reported on it.
inline std::vector<std::int64_t> reporting_grid(const ExperimentConfig& config) {
    const std::int64_t stride = config.resolved_stride();
    std::vector<std::int64_t> grid;
    grid.reserve(static_cast<std::size_t>(config.horizon / stride));
    for (std::int64_t t = stride; t <= config.horizon; t += stride) {
        grid.push_back(t);
    }
    return grid;
}

// The interaction loop: one pull per arm in index order during rounds 1..K,
// then the configured policy to the horizon. on_step(t, arm, reward, stats)
// runs after each update. Deterministic in (config, replication).
template <typename OnStep>
void simulate_run(const ExperimentConfig& config, std::int64_t replication, OnStep&& on_step) {
    const std::size_t k = config.instance.num_arms();
    RandomStream env_stream(config.master_seed, static_cast<std::uint64_t>(replication),
                            StreamPurpose::environment);
    RandomStream policy_stream(config.master_seed, static_cast<std::uint64_t>(replication),
                               StreamPurpose::policy);
    std::vector<ArmStatistics> stats(k);
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        const std::size_t arm = t <= static_cast<std::int64_t>(k)
                                    ? static_cast<std::size_t>(t - 1)
                                    : select_arm(config.policy, stats, t, policy_stream);
        const double reward = sample_reward(config.instance, arm, env_stream);
        stats[arm] = update_arm(stats[arm], reward);
        on_step(t, arm, reward, stats);
    }
}

inline RunTrace run_single(const ExperimentConfig& config, std::int64_t replication) {
    config.validate();
    const std::size_t k = config.instance.num_arms();
    const std::int64_t stride = config.resolved_stride();
    RunTrace trace;
    trace.num_arms = k;
    trace.steps.reserve(static_cast<std::size_t>(config.horizon));
    simulate_run(config, replication,
                 [&](std::int64_t t, std::size_t arm, double reward,
                     const std::vector<ArmStatistics>& stats) {
                     StepRecord step;
                     step.t = t;
                     step.arm = arm;
                     step.reward = reward;
                     step.pulls.reserve(k);
                     step.means.reserve(k);
                     for (const auto& s : stats) {
                         step.pulls.push_back(s.pulls);
                         step.means.push_back(s.pulls > 0 ? s.mean() : 0.0);
                     }
                     trace.steps.push_back(std::move(step));
                     if (config.record_spectral && t % stride == 0 &&
                         t >= static_cast<std::int64_t>(k)) {
                         std::vector<double> energy(k, 0.0);
                         energy[arm] = 1.0;  // per-run one-hot realization
                         trace.snapshots.push_back(snapshot(stats, t, energy));
                     }
                     if (t == config.horizon) trace.final_stats = stats;
                 });
    return trace;
}

struct RunOptions {
    int threads = 1;  // 0 = hardware concurrency
};

// Aggregates over exactly R replications. V(T) is reported in two labeled
// modes: "ensemble" sums slice deviations of the Monte Carlo energy estimate
// (stride-weighted on the grid), "per_run" averages each run's exact
// one-hot V, which equals twice its suboptimal pull count.
struct EnsembleResult {
    std::int64_t horizon = 0;
    std::int64_t replications = 0;
    std::uint64_t master_seed = 0;
    std::string config_hash;
    std::int64_t stride = 1;
    std::vector<std::int64_t> grid;
    std::vector<double> mean_regret;                   // per step
    std::vector<double> std_regret;                    // per step
    std::vector<double> mean_pulls;                    // per arm, at the horizon
    std::vector<std::vector<double>> energy;           // grid x K
    std::vector<std::vector<double>> mean_amplitude;   // grid x K, 0 before init completes
    std::vector<std::vector<double>> mean_frequency;   // grid x K, 0 before init completes
    std::vector<double> v_ensemble;                    // per grid point
    std::vector<double> v_per_run;                     // per grid point
    std::vector<double> final_regrets;                 // per replication
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    double ci_half_width = 0.0;  // 1.96 * std / sqrt(R)
};

namespace detail {

// Replications are reduced in fixed-size blocks: whichever thread computes a
// block, partials are combined in ascending block order, so the result is
// bit-identical for every thread count.
inline constexpr std::int64_t kReductionBlock = 64;

struct EnsemblePartial {
    std::vector<double> regret_sum, regret_sumsq;          // per step
    std::vector<double> v_run_sum;                         // per grid point
    std::vector<std::vector<std::int64_t>> arm_counts;     // grid x K
    std::vector<std::vector<double>> amp_sum, freq_sum;    // grid x K
    std::vector<std::int64_t> pulls_sum;                   // per arm

    EnsemblePartial(std::size_t horizon, std::size_t grid_size, std::size_t k)
        : regret_sum(horizon, 0.0),
          regret_sumsq(horizon, 0.0),
          v_run_sum(grid_size, 0.0),
          arm_counts(grid_size, std::vector<std::int64_t>(k, 0)),
          amp_sum(grid_size, std::vector<double>(k, 0.0)),
          freq_sum(grid_size, std::vector<double>(k, 0.0)),
          pulls_sum(k, 0) {}
};

inline int resolve_threads(int requested, std::int64_t blocks) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    return static_cast<int>(std::min<std::int64_t>(n, blocks));
}

}  // namespace detail

inline EnsembleResult run_ensemble(const ExperimentConfig& config, const RunOptions& options = {}) {
    config.validate();
    const std::size_t k = config.instance.num_arms();
    const std::int64_t T = config.horizon;
    const std::int64_t R = config.replications;
    const std::int64_t stride = config.resolved_stride();
    const std::vector<std::int64_t> grid = reporting_grid(config);
    const std::size_t grid_size = grid.size();
    const std::vector<double> gap = gaps(config.instance);
    const std::size_t optimal = config.instance.optimal_arm();

    const std::int64_t blocks =
        (R + detail::kReductionBlock - 1) / detail::kReductionBlock;
    std::vector<detail::EnsemblePartial> partials;
    partials.reserve(static_cast<std::size_t>(blocks));
    for (std::int64_t b = 0; b < blocks; ++b) {
        partials.emplace_back(static_cast<std::size_t>(T), grid_size, k);
    }
    std::vector<double> final_regrets(static_cast<std::size_t>(R), 0.0);

    auto process_block = [&](std::int64_t block) {
        detail::EnsemblePartial& part = partials[static_cast<std::size_t>(block)];
        const std::int64_t rep_begin = block * detail::kReductionBlock;
        const std::int64_t rep_end = std::min(R, rep_begin + detail::kReductionBlock);
        for (std::int64_t rep = rep_begin; rep < rep_end; ++rep) {
            double running_regret = 0.0;
            std::int64_t suboptimal_picks = 0;
            simulate_run(config, rep,
                         [&](std::int64_t t, std::size_t arm, double /*reward*/,
                             const std::vector<ArmStatistics>& stats) {
                             running_regret += gap[arm];
                             part.regret_sum[static_cast<std::size_t>(t - 1)] += running_regret;
                             part.regret_sumsq[static_cast<std::size_t>(t - 1)] +=
                                 running_regret * running_regret;
                             if (arm != optimal) ++suboptimal_picks;
                             if (t % stride == 0) {
                                 const auto j = static_cast<std::size_t>(t / stride - 1);
                                 part.arm_counts[j][arm] += 1;
                                 part.v_run_sum[j] += 2.0 * static_cast<double>(suboptimal_picks);
                                 for (std::size_t i = 0; i < k; ++i) {
                                     if (stats[i].pulls > 0) {
                                         part.amp_sum[j][i] += stats[i].mean();
                                         part.freq_sum[j][i] += frequency(stats[i].pulls);
                                     }
                                 }
                             }
                             if (t == T) {
                                 final_regrets[static_cast<std::size_t>(rep)] = running_regret;
                                 for (std::size_t i = 0; i < k; ++i) {
                                     part.pulls_sum[i] += stats[i].pulls;
                                 }
                             }
                         });
        }
    };

    const int threads = detail::resolve_threads(options.threads, blocks);
    if (threads <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) process_block(b);
    } else {
        std::atomic<std::int64_t> next_block{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t b = next_block.fetch_add(1);
                    if (b >= blocks) break;
                    process_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction in ascending block order.
    detail::EnsemblePartial total(static_cast<std::size_t>(T), grid_size, k);
    for (const auto& part : partials) {
        for (std::size_t t = 0; t < static_cast<std::size_t>(T); ++t) {
            total.regret_sum[t] += part.regret_sum[t];
            total.regret_sumsq[t] += part.regret_sumsq[t];
        }
        for (std::size_t j = 0; j < grid_size; ++j) {
            total.v_run_sum[j] += part.v_run_sum[j];
            for (std::size_t i = 0; i < k; ++i) {
                total.arm_counts[j][i] += part.arm_counts[j][i];
                total.amp_sum[j][i] += part.amp_sum[j][i];
                total.freq_sum[j][i] += part.freq_sum[j][i];
            }
        }
        for (std::size_t i = 0; i < k; ++i) total.pulls_sum[i] += part.pulls_sum[i];
    }

    EnsembleResult result;
    result.horizon = T;
    result.replications = R;
    result.master_seed = config.master_seed;
    result.config_hash = config_hash(config);
    result.stride = stride;
    result.grid = grid;
    const double r = static_cast<double>(R);
    result.mean_regret.resize(static_cast<std::size_t>(T));
    result.std_regret.resize(static_cast<std::size_t>(T));
    for (std::size_t t = 0; t < static_cast<std::size_t>(T); ++t) {
        result.mean_regret[t] = total.regret_sum[t] / r;
        double var = 0.0;
        if (R > 1) {
            var = (total.regret_sumsq[t] - total.regret_sum[t] * total.regret_sum[t] / r) /
                  (r - 1.0);
        }
        result.std_regret[t] = var > 0.0 ? std::sqrt(var) : 0.0;
    }
    result.mean_pulls.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        result.mean_pulls[i] = static_cast<double>(total.pulls_sum[i]) / r;
    }
    const std::vector<double> ideal = ideal_spectrum(config.instance);
    result.energy.assign(grid_size, std::vector<double>(k, 0.0));
    result.mean_amplitude.assign(grid_size, std::vector<double>(k, 0.0));
    result.mean_frequency.assign(grid_size, std::vector<double>(k, 0.0));
    result.v_ensemble.resize(grid_size);
    result.v_per_run.resize(grid_size);
    double v_running = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        double slice = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            result.energy[j][i] = static_cast<double>(total.arm_counts[j][i]) / r;
            result.mean_amplitude[j][i] = total.amp_sum[j][i] / r;
            result.mean_frequency[j][i] = total.freq_sum[j][i] / r;
            const double d = result.energy[j][i] - ideal[i];
            slice += d * d;
        }
        v_running += slice * static_cast<double>(stride);
        result.v_ensemble[j] = v_running;
        result.v_per_run[j] = total.v_run_sum[j] / r;
    }
    result.final_regrets = std::move(final_regrets);
    double sum = 0.0;
    for (double v : result.final_regrets) sum += v;
    result.mean_final_regret = sum / r;
    double sq = 0.0;
    for (double v : result.final_regrets) {
        const double d = v - result.mean_final_regret;
        sq += d * d;
    }
    result.std_final_regret = R > 1 ? std::sqrt(sq / (r - 1.0)) : 0.0;
    result.ci_half_width = 1.96 * result.std_final_regret / std::sqrt(r);
    return result;
}

struct SweepRow {
    double alpha = 0.0;
    double mean_regret = 0.0;
    double ci_half_width = 0.0;
    double v_of_t = 0.0;  // ensemble-mode V at the horizon
    std::vector<double> mean_pulls;
};

// One ensemble per exponent with shared master seed (common random numbers):
// environment draws during the initialization phase are identical across
// rows, so rows differ only through the policy parameter.
inline std::vector<SweepRow> sweep_alpha(const ExperimentConfig& config,
                                         const std::vector<double>& alphas,
                                         const RunOptions& options = {}) {
    if (alphas.empty()) {
        throw ConfigError("alphas: the sweep needs at least one exponent");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a <= 1.0)) {
            throw ConfigError("alphas: exponents must lie in (0, 1]");
        }
    }
    if (config.policy.kind != PolicyKind::ucb1 &&
        config.policy.kind != PolicyKind::generalized_ucb) {
        throw ConfigError("policy.kind: the alpha sweep requires a UCB-family policy");
    }
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        ExperimentConfig swept = config;
        swept.policy.kind = PolicyKind::generalized_ucb;
        swept.policy.alpha_exp = a;
        const EnsembleResult res = run_ensemble(swept, options);
        SweepRow row;
        row.alpha = a;
        row.mean_regret = res.mean_final_regret;
        row.ci_half_width = res.ci_half_width;
        row.v_of_t = res.v_ensemble.empty() ? 0.0 : res.v_ensemble.back();
        row.mean_pulls = res.mean_pulls;
        rows.push_back(std::move(row));
    }
    return rows;
}

// Ensemble spectrum restricted to explicitly requested times. Amplitude and
// frequency are averaged over replications with unpulled arms contributing 0
// (only possible before the initialization phase completes).
struct SpectralSlice {
    std::int64_t t = 0;
    std::vector<double> amplitude;
    std::vector<double> frequency;
    std::vector<double> energy;
};

inline std::vector<SpectralSlice> spectrum_at(const ExperimentConfig& config,
                                              const std::vector<std::int64_t>& times) {
    config.validate();
    if (times.empty()) {
        throw ConfigError("at: at least one time is required");
    }
    for (std::int64_t t : times) {
        if (t < 1 || t > config.horizon) {
            throw ConfigError("at: requested time outside the horizon");
        }
    }
    const std::size_t k = config.instance.num_arms();
    std::vector<SpectralSlice> slices;
    slices.reserve(times.size());
    for (std::int64_t t : times) {
        SpectralSlice s;
        s.t = t;
        s.amplitude.assign(k, 0.0);
        s.frequency.assign(k, 0.0);
        s.energy.assign(k, 0.0);
        slices.push_back(std::move(s));
    }
    for (std::int64_t rep = 0; rep < config.replications; ++rep) {
        simulate_run(config, rep,
                     [&](std::int64_t t, std::size_t arm, double /*reward*/,
                         const std::vector<ArmStatistics>& stats) {
                         for (std::size_t s = 0; s < times.size(); ++s) {
                             if (times[s] != t) continue;
                             slices[s].energy[arm] += 1.0;
                             for (std::size_t i = 0; i < k; ++i) {
                                 if (stats[i].pulls > 0) {
                                     slices[s].amplitude[i] += stats[i].mean();
                                     slices[s].frequency[i] += frequency(stats[i].pulls);
                                 }
                             }
                         }
                     });
    }
    const double r = static_cast<double>(config.replications);
    for (auto& s : slices) {
        for (std::size_t i = 0; i < k; ++i) {
            s.energy[i] /= r;
            s.amplitude[i] /= r;
            s.frequency[i] /= r;
        }
    }
    return slices;
}

}  // namespace specband
