#include "lt/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace lt {

void Tolerance::validate() const {
  if (!(abs > 0.0 && abs < 1.0)) throw precondition_error("Tolerance: abs must lie in (0,1)");
  if (!(rel > 0.0 && rel < 1.0)) throw precondition_error("Tolerance: rel must lie in (0,1)");
  if (max_iter <= 0 || max_iter > 1'000'000)
    throw precondition_error("Tolerance: max_iter must lie in [1, 1e6]");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw precondition_error("gamma_fn: argument must be positive");
  // Lanczos approximation, g = 7, n = 9.
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  const double z = x - 1.0;
  double series = coef[0];
  for (int i = 1; i < 9; ++i) series += coef[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

}  // namespace lt
