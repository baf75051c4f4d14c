// Seedable pseudo-random generator for reproducible simulations.
#pragma once

#include <cstdint>

namespace mprtrack {

// SplitMix64 (Steele, Lea, Flood; the java.util.SplittableRandom finalizer).
// The identity of the generator is part of the reproducibility contract:
// identical seeds produce identical streams on every platform. Uniform
// doubles take the top 53 bits of the output, giving values in [0, 1).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

}  // namespace mprtrack
