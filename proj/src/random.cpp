#include "lt/random.hpp"

#include <algorithm>

namespace lt {

Potential random_piecewise(SplitMix64& rng, Domain d) {
  const int pieces = rng.uniform_int(3, 8);
  std::vector<double> breaks;
  while (static_cast<int>(breaks.size()) < pieces + 1) {
    breaks.clear();
    for (int i = 0; i <= pieces; ++i) breaks.push_back(10.0 * rng.uniform());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }
  std::vector<double> values;
  for (int i = 0; i < pieces; ++i) values.push_back(5.0 * (1.0 - rng.uniform()));  // (0, 5]
  return piecewise_constant(std::move(breaks), std::move(values), d);
}

std::vector<Potential> random_piecewise_suite(std::uint64_t seed, int count, Domain d) {
  SplitMix64 rng(seed);
  std::vector<Potential> out;
  for (int i = 0; i < count; ++i) out.push_back(random_piecewise(rng, d));
  return out;
}

}  // namespace lt
