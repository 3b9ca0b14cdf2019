#include <gtest/gtest.h>

#include <cmath>

#include "lt/bracketing.hpp"
#include "lt/constants.hpp"
#include "lt/random.hpp"

using namespace lt;

namespace {

const double kUpperRatio = varsigma(3.0) / 3.0;

// Mass of a step function on [a, b] from its jump points and midpoint
// values, without quadrature.
double step_mass(const Potential& v, double a, double b) {
  const auto br = v.kinks();
  double m = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double lo = std::max(a, br[i]), hi = std::min(b, br[i + 1]);
    if (hi > lo) m += v(0.5 * (br[i] + br[i + 1])) * (hi - lo);
  }
  return m;
}

}  // namespace

TEST(Partition, SquareWellClosedForm) {
  const auto p = build_partition(square_well(3, 0, 2, Domain::half_line()));
  ASSERT_EQ(p.breakpoints.size(), 4u);
  EXPECT_NEAR(p.breakpoints[0], 0, 1e-15);
  EXPECT_NEAR(p.breakpoints[1], 1, 1e-8);
  EXPECT_NEAR(p.breakpoints[2], 2, 1e-8);
  EXPECT_TRUE(std::isinf(p.breakpoints[3]));
  EXPECT_TRUE(p.infinite_tail);
  EXPECT_NEAR(p.masses[0], 3, 1e-8);
  EXPECT_NEAR(p.masses[1], 3, 1e-8);
  EXPECT_NEAR(p.tail_mass, 0.0, 1e-12);
}

TEST(Partition, ZeroPotentialDegenerates) {
  const auto p = build_partition(zero_potential(Domain::half_line()));
  EXPECT_TRUE(p.degenerate);
  EXPECT_EQ(p.intervals(), 0u);
  ASSERT_EQ(p.breakpoints.size(), 2u);
  EXPECT_TRUE(std::isinf(p.breakpoints[1]));
}

TEST(Partition, ScalingDividesBreakpoints) {
  const Potential v = gaussian(2, 1, 0.7, Domain::half_line());
  const auto p = build_partition(v);
  for (double alpha : {0.5, 2.0, 5.0}) {
    const auto q = build_partition(scaled(alpha, v));
    ASSERT_EQ(q.intervals(), p.intervals());
    for (std::size_t k = 1; k + 1 < p.breakpoints.size(); ++k)
      EXPECT_NEAR(q.breakpoints[k], p.breakpoints[k] / alpha, 1e-8 * p.breakpoints[k]);
  }
}

TEST(Partition, RejectsBadInput) {
  EXPECT_THROW(build_partition(square_well(1, 0, 1)), precondition_error);
  EXPECT_THROW(build_partition(multiple(-1, square_well(1, 0, 1, Domain::half_line()))), precondition_error);
}

TEST(Partition, RandomPiecewiseSatisfyMassCondition) {
  SplitMix64 rng(kDefaultSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const Potential v = random_piecewise(rng, Domain::half_line());
    const auto p = build_partition(v);
    for (std::size_t k = 0; k < p.intervals(); ++k) {
      const double a = p.breakpoints[k], b = p.breakpoints[k + 1];
      EXPECT_NEAR((b - a) * step_mass(v, a, b), 3.0, 3e-8) << trial << ' ' << k;
      EXPECT_LE(p.lambda_lower[k], p.lambda_upper[k]);
    }
  }
}

TEST(GroundBounds, FullDepthWellOnUnitInterval) {
  const Potential v = square_well(3, 0, 2, Domain::half_line());
  const auto p = build_partition(v);
  const auto g = interval_ground_bounds(v, p, 0);
  EXPECT_NEAR(g.lambda1, std::sqrt(3.0), 1e-8);
  EXPECT_NEAR(g.lower, std::sqrt(3.0), 1e-8);
  EXPECT_NEAR(g.upper, varsigma(3.0), 1e-8);
  EXPECT_LE(g.lower, g.lambda1 + g.radius + 1e-8);
  EXPECT_LE(g.lambda1 - g.radius, g.upper);
  EXPECT_THROW(interval_ground_bounds(v, p, 2), precondition_error);
}

TEST(GroundBounds, VarsigmaBoundOffPartition) {
  // l * int V = 1 on an interval that is not a partition interval
  const Potential v = gaussian(1, 0.4, 0.3);
  const double l = 1.3;
  const double mass = integrate(v, 0, l);
  const Potential w = multiple(1 / (l * mass), v);
  const auto s = solve_interval(w, 0, l, EndCondition::neumann);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_LE(std::sqrt(-s.eigenvalues[0]), varsigma(1.0) / l + 1e-8);
}

TEST(GroundBounds, OneNeumannStatePerInterval) {
  SplitMix64 rng(kDefaultSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const Potential v = random_piecewise(rng, Domain::half_line());
    const auto p = build_partition(v);
    for (std::size_t k = 0; k < p.intervals(); ++k) {
      const auto s = solve_interval(v, p.breakpoints[k], p.breakpoints[k + 1], EndCondition::neumann);
      EXPECT_EQ(s.size() + s.threshold.size(), 1u) << trial << ' ' << k;
    }
  }
}

TEST(Certificate, PoschlTellerSaturatesLowerBound) {
  const auto c = certify_theorem1(poschl_teller(1.0));
  EXPECT_TRUE(c.pass());
  EXPECT_NEAR(c.integral_v, 4, 1e-10);
  EXPECT_NEAR(c.sum_sqrt.value, 1, 1e-6);
  EXPECT_NEAR(c.lower, 1, 1e-10);
  EXPECT_NEAR(c.upper, 4 * kUpperRatio, 1e-10);
  EXPECT_NEAR(c.sum_sqrt.value / c.lower, 1, 1e-4);
  ASSERT_EQ(c.checks.size(), 4u);

  const auto d = certify_theorem1(poschl_teller(2.0));
  EXPECT_TRUE(d.pass());
  EXPECT_NEAR(d.sum_sqrt.value, 3, 1e-6);
  EXPECT_NEAR(d.lower, 3, 1e-10);
}

TEST(Certificate, HalfLineSquareWell) {
  const auto c = certify_theorem1(square_well(3, 0, 2, Domain::half_line()));
  EXPECT_TRUE(c.pass());
  ASSERT_EQ(c.checks.size(), 3u);
  const auto j = certificate_json(c);
  ASSERT_EQ(j["partition"].size(), 4u);
  EXPECT_NEAR(j["partition"][1].get<double>(), 1, 1e-8);
  EXPECT_EQ(j["partition"][3], "inf");
  EXPECT_EQ(j["verdict"], "pass");
  for (const char* key : {"integral_V", "sum_sqrt", "bracket_sum", "upper", "lower"}) EXPECT_TRUE(j.contains(key));
}

TEST(Certificate, ZeroPotential) {
  const auto c = certify_theorem1(zero_potential());
  EXPECT_TRUE(c.pass());
  EXPECT_EQ(c.integral_v, 0);
  EXPECT_EQ(c.sum_sqrt.value, 0);
  EXPECT_EQ(c.bracket_sum, 0);
  EXPECT_EQ(c.upper, 0);
}

TEST(Certificate, ScalingKeepsVerdict) {
  const Potential v = gaussian(1.5, 0.3, 0.8);
  const bool base = certify_theorem1(v).pass();
  EXPECT_TRUE(base);
  for (double alpha : {0.5, 2.0, 5.0}) EXPECT_EQ(certify_theorem1(scaled(alpha, v)).pass(), base) << alpha;
}

TEST(Certificate, RejectsSignedOrIntervalPotentials) {
  EXPECT_THROW(certify_theorem1(multiple(-1, poschl_teller(1.0))), precondition_error);
  EXPECT_THROW(certify_theorem1(square_well(1, 0, 1, Domain::interval(0, 2))), precondition_error);
}
