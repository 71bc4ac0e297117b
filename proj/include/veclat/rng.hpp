#pragma once

#include <cstdint>

namespace veclat {

// SplitMix64 (Steele/Lea/Flood). The algorithm is pinned so that seeded
// field contents and the golden checksums derived from them are portable
// across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [-1, 1), 53 significant bits.
    double uniform_pm1() {
        return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::uint64_t state_;
};

} // namespace veclat
