#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace specband {

// Purpose tag of a derived random stream. A replication owns one stream per
// purpose so that swept policy parameters never disturb environment draws
// (common random numbers).
enum class StreamPurpose : std::uint64_t {
    environment = 0,
    policy = 1,
    analysis = 2,
};

inline constexpr std::uint64_t kStreamPurposeCount = 3;

// Deterministic, replayable random stream.
//
// The generator contract is fixed forever (see README):
//   * engine: std::mt19937_64, whose algorithm and single-seed initialization
//     are fully specified by the C++ standard;
//   * stream seed: output number (replication * 3 + purpose) of the
//     splitmix64 sequence started at master_seed;
//   * uniform in [0, 1): the top 53 bits of one engine output, scaled by
//     2^-53;
//   * standard normal: Box-Muller, sqrt(-2 ln u1) * cos(2 pi u2), consuming
//     exactly two uniforms per draw (no caching of the second variate);
//   * index in [0, k): floor(u * k), clamped to k - 1.
//
// Identical (master_seed, replication, purpose) gives a bit-identical
// sequence; distinct ids give statistically independent streams.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t replication, StreamPurpose purpose)
        : engine_(stream_seed(master_seed, replication, purpose)) {}

    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double next_normal() {
        double u1 = next_uniform();
        double u2 = next_uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;  // ln(0) guard; smallest grid point
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    std::size_t next_index(std::size_t k) {
        const auto idx = static_cast<std::size_t>(next_uniform() * static_cast<double>(k));
        return idx < k ? idx : k - 1;
    }

private:
    static constexpr double kTwoPi = 6.283185307179586;

    // splitmix64 output #index of the sequence with the given start state.
    // The state walks in fixed increments, so output #index is available in
    // O(1) without stepping through the sequence.
    static std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t replication,
                                     StreamPurpose purpose) {
        const std::uint64_t index =
            replication * kStreamPurposeCount + static_cast<std::uint64_t>(purpose);
        std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace specband
