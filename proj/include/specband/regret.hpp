#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "specband/core.hpp"
#include "specband/trace.hpp"

namespace specband {

// Per-step cumulative pseudo-regret, R(t) = sum_{s<=t} gap(I_s). Uses true
// means rather than realized rewards, the unbiased low-variance estimator of
// the expected regret.
using RegretCurve = std::vector<double>;

inline RegretCurve cumulative_regret(const RunTrace& trace, const BanditInstance& instance) {
    const std::vector<double> gap = gaps(instance);
    RegretCurve curve;
    curve.reserve(trace.steps.size());
    double total = 0.0;
    for (const auto& step : trace.steps) {
        if (step.arm >= gap.size()) {
            throw std::invalid_argument("trace arm index outside the instance");
        }
        total += gap[step.arm];
        curve.push_back(total);
    }
    return curve;
}

// Theoretical per-arm pull ceiling C * sigma^2 * ln T / gap^2. The optimal
// arm (and any zero-gap arm) is unbounded and reported as +infinity.
inline std::vector<double> pull_count_bound(const BanditInstance& instance, double sigma, double T,
                                            double C = 8.0) {
    if (!(T >= 2.0)) throw std::invalid_argument("pull_count_bound requires T >= 2");
    if (!(C > 0.0)) throw std::invalid_argument("pull_count_bound requires C > 0");
    const std::vector<double> gap = gaps(instance);
    std::vector<double> bound;
    bound.reserve(gap.size());
    for (double g : gap) {
        if (g <= 0.0) {
            bound.push_back(std::numeric_limits<double>::infinity());
        } else {
            bound.push_back(C * sigma * sigma * std::log(T) / (g * g));
        }
    }
    return bound;
}

struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of value against ln T. A constant series fits with
// slope 0 and r^2 = 0 by convention.
inline LogFit fit_log_slope(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) {
        throw std::invalid_argument("fit_log_slope needs at least 3 points");
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series[i].first >= 2.0)) {
            throw std::invalid_argument("fit_log_slope requires T values >= 2");
        }
        for (std::size_t j = i + 1; j < series.size(); ++j) {
            if (series[i].first == series[j].first) {
                throw std::invalid_argument("fit_log_slope requires distinct T values");
            }
        }
    }

    bool constant = true;
    for (const auto& [T, value] : series) {
        if (value != series.front().second) constant = false;
    }
    if (constant) {
        return LogFit{0.0, series.front().second, 0.0};
    }

    const double n = static_cast<double>(series.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [T, value] : series) {
        sx += std::log(T);
        sy += value;
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [T, value] : series) {
        const double dx = std::log(T) - mx;
        const double dy = value - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [T, value] : series) {
        const double d = value - (fit.intercept + fit.slope * std::log(T));
        ss_res += d * d;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 0.0;
    return fit;
}

}  // namespace specband
