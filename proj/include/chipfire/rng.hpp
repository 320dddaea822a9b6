#pragma once

#include <cstdint>

namespace chipfire {

/// splitmix64 generator. The algorithm is fully specified (Steele, Lea &
/// Flood's SplittableRandom finalizer), so a fixed seed reproduces the same
/// stream on every platform; std::mt19937 plus distributions would not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), built from the top 53 bits so the mapping is
  /// exact and platform-independent.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  /// draw unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Deterministic combination of a base seed with a tag, used to derive
/// per-instance seeds: one splitmix64 step of (a xor golden*(b+1)).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 rng(a ^ (0x9E3779B97F4A7C15ULL * (b + 1)));
  return rng.next();
}

}  // namespace chipfire
