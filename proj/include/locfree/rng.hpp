#pragma once

#include <cstdint>

namespace locfree {

// SplitMix64: a small, seedable 64-bit generator with O(1) substream
// derivation. Replica streams are derived from (seed, replica index) so
// parallel experiments stay reproducible and merge order-independently.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw in [0, n). Rejection sampling over full blocks.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (~0ULL / n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static SplitMix64 for_replica(std::uint64_t seed, std::uint64_t replica) {
    SplitMix64 g(seed ^ (0xA0761D6478BD642FULL * (replica + 1)));
    g.next();
    return g;
  }

 private:
  std::uint64_t state_;
};

}  // namespace locfree
