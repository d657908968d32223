// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace spinvqe {

/// SplitMix64 (Steele, Lea & Flood 2014). Counter-based: the state advances by
/// a fixed odd increment and the output is a bijective finalizer of the state,
/// so streams are bit-identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Deterministic sub-stream seed: mixes (index + 1) into the master seed with
/// a fixed odd multiplier, then applies one SplitMix64 step. Sub-streams are
/// keyed by index, never by execution order, so parallel and sequential runs
/// draw identical samples.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return g.next();
}

} // namespace spinvqe
