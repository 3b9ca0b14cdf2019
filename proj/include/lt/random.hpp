#ifndef LT_RANDOM_HPP
#define LT_RANDOM_HPP

#include <cstdint>
#include <vector>

#include "lt/potential.hpp"

namespace lt {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Piecewise constant with 3-8 pieces, values in (0, 5], support inside [0, 10].
Potential random_piecewise(SplitMix64& rng, Domain d = Domain::full_line());

/// `count` potentials from one seed, in a fixed order.
std::vector<Potential> random_piecewise_suite(std::uint64_t seed, int count, Domain d = Domain::full_line());

}  // namespace lt

#endif  // LT_RANDOM_HPP
