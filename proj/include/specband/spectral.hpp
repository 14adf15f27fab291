#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "specband/core.hpp"

namespace specband {

// Floor applied to spectral-flatness inputs before the geometric mean.
inline constexpr double kFlatnessFloor = 1e-12;

// Uncertainty scale of an arm: omega = 1 / sqrt(pulls). The proportionality
// constant is fixed at 1; every downstream quantity is invariant to it.
inline double frequency(std::int64_t pulls) {
    if (pulls < 1) {
        throw std::invalid_argument("frequency undefined for an arm with no pulls");
    }
    return 1.0 / std::sqrt(static_cast<double>(pulls));
}

inline std::vector<double> frequencies(const std::vector<ArmStatistics>& all_stats) {
    std::vector<double> out;
    out.reserve(all_stats.size());
    for (const auto& s : all_stats) out.push_back(frequency(s.pulls));
    return out;
}

// Per-arm spectral component at one time step: amplitude is the empirical
// mean, frequency the uncertainty scale, energy the selection probability.
struct SpectralComponent {
    double amplitude = 0.0;
    double frequency = 0.0;
    double energy = 0.0;
};

struct SpectralSnapshot {
    std::int64_t t = 0;
    std::vector<SpectralComponent> components;
};

inline SpectralSnapshot snapshot(const std::vector<ArmStatistics>& all_stats, std::int64_t t,
                                 const std::vector<double>& energy) {
    if (energy.size() != all_stats.size()) {
        throw std::invalid_argument("energy vector length does not match the arm count");
    }
    SpectralSnapshot snap;
    snap.t = t;
    snap.components.reserve(all_stats.size());
    for (std::size_t i = 0; i < all_stats.size(); ++i) {
        snap.components.push_back(
            SpectralComponent{all_stats[i].mean(), frequency(all_stats[i].pulls), energy[i]});
    }
    return snap;
}

// Per-time-step energy vectors of a run or ensemble; each slice is a
// probability vector over arms.
using PolicySpectrum = std::vector<std::vector<double>>;

// Monte Carlo estimate of E_i(t) = P(I_t = i) from an ensemble of traces.
// TraceT must expose num_arms and steps[t-1].arm (1-based t).
template <typename TraceT>
std::vector<double> estimate_energy_ensemble(const std::vector<TraceT>& traces, std::int64_t t) {
    if (traces.empty()) {
        throw std::invalid_argument("energy estimation needs at least one trace");
    }
    const std::size_t num_arms = traces.front().num_arms;
    std::vector<double> energy(num_arms, 0.0);
    for (const auto& trace : traces) {
        if (t < 1 || static_cast<std::size_t>(t) > trace.steps.size()) {
            throw std::invalid_argument("t outside the trace horizon");
        }
        const auto arm = static_cast<std::size_t>(trace.steps[static_cast<std::size_t>(t - 1)].arm);
        energy.at(arm) += 1.0;
    }
    for (double& e : energy) e /= static_cast<double>(traces.size());
    return energy;
}

// Energy allocation of the ideal optimal filter: one-hot on the canonical
// optimal arm, constant in time.
inline std::vector<double> ideal_spectrum(const BanditInstance& instance) {
    std::vector<double> out(instance.num_arms(), 0.0);
    out[instance.optimal_arm()] = 1.0;
    return out;
}

// Cumulative spectral energy variation V(T) = sum_{t<=T} sum_i
// (E_i(t) - E*_i)^2.
inline double spectral_energy_variation(const PolicySpectrum& energies,
                                        const std::vector<double>& ideal, std::int64_t T) {
    if (T < 0 || static_cast<std::size_t>(T) > energies.size()) {
        throw std::invalid_argument("T exceeds the recorded spectrum length");
    }
    double total = 0.0;
    for (std::size_t t = 0; t < static_cast<std::size_t>(T); ++t) {
        const auto& slice = energies[t];
        if (slice.size() != ideal.size()) {
            throw std::invalid_argument("spectrum slice length does not match the ideal vector");
        }
        for (std::size_t i = 0; i < slice.size(); ++i) {
            const double d = slice[i] - ideal[i];
            total += d * d;
        }
    }
    return total;
}

// Geometric over arithmetic mean after flooring each value at kFlatnessFloor.
// 1 for a flat vector, near 0 for a one-hot vector; clamped into [0, 1].
inline double spectral_flatness(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("spectral flatness of an empty vector");
    }
    bool any_positive = false;
    for (double v : values) {
        if (v > 0.0) any_positive = true;
        if (!(v >= 0.0)) {
            throw std::invalid_argument("spectral flatness inputs must be non-negative");
        }
    }
    if (!any_positive) {
        throw std::invalid_argument("spectral flatness undefined for an all-zero vector");
    }
    double log_sum = 0.0;
    double sum = 0.0;
    for (double v : values) {
        const double floored = v < kFlatnessFloor ? kFlatnessFloor : v;
        log_sum += std::log(floored);
        sum += floored;
    }
    const double n = static_cast<double>(values.size());
    const double ratio = std::exp(log_sum / n) / (sum / n);
    return ratio < 0.0 ? 0.0 : (ratio > 1.0 ? 1.0 : ratio);
}

}  // namespace specband
