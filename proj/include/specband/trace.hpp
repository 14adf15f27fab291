#pragma once

#include <cstdint>
#include <vector>

#include "specband/core.hpp"
#include "specband/spectral.hpp"

namespace specband {

// One interaction step, recorded after the arm update. means[i] is 0 for an
// arm that has not been pulled yet (initialization phase only).
struct StepRecord {
    std::int64_t t = 0;
    std::size_t arm = 0;
    double reward = 0.0;
    std::vector<std::int64_t> pulls;
    std::vector<double> means;
};

// Full record of one simulated run: the history H_T plus optional spectral
// snapshots on the stride grid.
struct RunTrace {
    std::size_t num_arms = 0;
    std::vector<StepRecord> steps;
    std::vector<SpectralSnapshot> snapshots;
    std::vector<ArmStatistics> final_stats;

    std::int64_t horizon() const { return static_cast<std::int64_t>(steps.size()); }
};

}  // namespace specband
