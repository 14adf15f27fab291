#pragma once

#include <stdexcept>

#include "specband/core.hpp"
#include "specband/rng.hpp"

namespace specband {

// Draw one reward for the given arm. Bernoulli arms consume one uniform,
// Gaussian arms consume two (one Box-Muller normal) even at stddev = 0, so
// stream positions stay aligned across configurations.
inline double sample_reward(const BanditInstance& instance, std::size_t arm,
                            RandomStream& stream) {
    if (arm >= instance.num_arms()) {
        throw std::invalid_argument("arm index out of range");
    }
    const ArmDistribution& dist = instance.arm(arm);
    switch (dist.kind) {
        case ArmKind::bernoulli:
            return stream.next_uniform() < dist.mean ? 1.0 : 0.0;
        case ArmKind::gaussian:
            return dist.mean + dist.stddev * stream.next_normal();
    }
    throw std::logic_error("unreachable arm kind");
}

}  // namespace specband
