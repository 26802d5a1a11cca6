#pragma once

#include <cmath>
#include <cstdint>

namespace knnlab {

// SplitMix64 (Steele, Lea, Flood 2014; Vigna's fixed-increment variant).
//
// This generator and the stream derivation below are part of the
// reproducibility contract: every seeded output of the library is a pure
// function of (master seed, stream index), and changing either algorithm
// invalidates all recorded results. Do not swap them without bumping the
// tool version.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Counter-based substream derivation: a per-trial generator is seeded with a
// mix of (master, index), so trials need no coordination and may run in any
// order on any number of threads.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline SplitMix64 stream_rng(std::uint64_t master, std::uint64_t index) {
    return SplitMix64(stream_seed(master, index));
}

// Poisson counts. Inversion by sequential search for small means, Hormann's
// PTRD transformed rejection for large ones. Both consume only next_double()
// so the draw sequence is pinned by SplitMix64.
std::uint64_t poisson_draw(SplitMix64& rng, double mean);

}  // namespace knnlab
