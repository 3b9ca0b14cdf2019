#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lt/constants.hpp"
#include "lt/random.hpp"
#include "lt/scattering.hpp"

using namespace lt;

namespace {

// |R|^2 for a well of depth v on [-a, a], with q^2 = k^2 + v.
double square_well_r2(double v, double a, double k) {
  const double q = std::sqrt(k * k + v);
  const double s = v * std::sin(2 * q * a);
  return s * s / (4 * k * k * q * q + s * s);
}

}  // namespace

TEST(Scattering, ZeroPotentialReflectsNothing) {
  const auto d = reflection_coefficient(zero_potential(), default_k_grid(20));
  ASSERT_EQ(d.r_values.size(), 20u);
  for (const auto& r : d.r_values) EXPECT_EQ(std::abs(r), 0.0);
  EXPECT_EQ(d.log_integral, 0.0);
  EXPECT_EQ(sum_rule_residual(zero_potential()).residual, 0.0);
  const auto t2 = theorem2_check(zero_potential());
  EXPECT_EQ(t2.lhs, 0.0);
  EXPECT_EQ(t2.rhs, 0.0);
  EXPECT_TRUE(t2.pass);
}

TEST(Scattering, SquareWellMatchesClosedForm) {
  for (auto [v, a] : {std::pair{2.0, 1.0}, std::pair{5.0, 0.5}, std::pair{0.3, 3.0}}) {
    const auto d = reflection_coefficient(square_well(v, -a, a), default_k_grid(100));
    for (std::size_t i = 0; i < d.k_grid.size(); ++i)
      EXPECT_NEAR(std::norm(d.r_values[i]), square_well_r2(v, a, d.k_grid[i]), 1e-8) << d.k_grid[i];
  }
}

TEST(Scattering, PoschlTellerIsReflectionless) {
  for (double nu : {1.0, 2.0}) {
    const Potential pt = poschl_teller(nu);
    const auto d = reflection_coefficient(pt, default_k_grid());
    double worst = 0;
    for (const auto& r : d.r_values) worst = std::max(worst, std::abs(r));
    EXPECT_LT(worst, 1e-5) << nu;
  }
}

TEST(Scattering, UnitarityOnRandomPotentials) {
  SplitMix64 rng(kDefaultSeed);
  for (int trial = 0; trial < 10; ++trial) {
    const Potential v = random_piecewise(rng);
    const auto d = reflection_coefficient(v, default_k_grid(60));
    for (std::size_t i = 0; i < d.k_grid.size(); ++i) {
      EXPECT_NEAR(std::norm(d.r_values[i]) + std::norm(d.t_values[i]), 1.0, 1e-8);
      EXPECT_LE(std::abs(d.r_values[i]), 1.0);
    }
    EXPECT_LE(d.log_integral, 0.0);
  }
}

TEST(Scattering, SmoothSignedPotentialKeepsUnitarity) {
  const Potential v = sum({gaussian(3, -1, 0.5), gaussian(-1, 1, 0.7)});
  const auto d = reflection_coefficient(v, default_k_grid(80));
  for (double defect : d.unitarity_defect) EXPECT_LT(defect, 1e-8);
  EXPECT_LE(d.log_integral, 0.0);
}

TEST(Scattering, RejectsNonPositiveK) {
  EXPECT_THROW(reflection_coefficient(square_well(1, -1, 1), {0.0, 1.0}), precondition_error);
  EXPECT_THROW(reflection_coefficient(square_well(1, -1, 1), {2.0, 1.0}), precondition_error);
  EXPECT_THROW(reflection_coefficient(square_well(1, 0, 1, Domain::half_line()), {1.0}), precondition_error);
}

TEST(SumRule, ReflectionlessAndSquareWell) {
  const auto pt2 = sum_rule_residual(poschl_teller(2.0));
  EXPECT_NEAR(pt2.integral_v, 12, 1e-8);
  EXPECT_NEAR(pt2.four_sum_sqrt, 12, 1e-6);
  EXPECT_NEAR(pt2.log_term, 0, 1e-6);
  EXPECT_LT(std::fabs(pt2.residual), 1e-4);

  const auto pt1 = sum_rule_residual(poschl_teller(1.0));
  EXPECT_LT(std::fabs(pt1.residual), 1e-4);

  const auto sw = sum_rule_residual(square_well(2, -1, 1));
  EXPECT_LT(std::fabs(sw.residual), 1e-3);
  EXPECT_LT(sw.log_term, -0.1);
}

TEST(SumRule, SignedPotential) {
  const auto s = sum_rule_residual(sum({square_well(3, -1, 0), multiple(-1, square_well(1, 0, 1.5))}));
  EXPECT_LT(std::fabs(s.residual), 1e-3);
}

TEST(Theorem2, HoldsOnTestPotentials) {
  const double rhs_factor = 4 * varsigma(3.0) / 3.0 - 1;
  const auto pt = theorem2_check(poschl_teller(1.0));
  EXPECT_NEAR(pt.lhs, 0, 1e-6);
  EXPECT_NEAR(pt.rhs, rhs_factor * 4, 1e-8);
  EXPECT_TRUE(pt.pass);
  const auto sw = theorem2_check(square_well(2, -1, 1));
  EXPECT_NEAR(sw.rhs, rhs_factor * 4, 1e-8);
  EXPECT_GT(sw.lhs, 0.1);
  EXPECT_TRUE(sw.pass);
  const auto signed_v = theorem2_check(sum({square_well(3, -1, 0), multiple(-1, square_well(1, 0, 1.5))}));
  EXPECT_NEAR(signed_v.rhs, 1.5 + rhs_factor * 3, 1e-8);
  EXPECT_TRUE(signed_v.pass);
}

TEST(ScatteringCsv, HeaderAndRows) {
  const auto d = reflection_coefficient(zero_potential(), {1.0, 2.0});
  const auto csv = scattering_csv(d);
  EXPECT_EQ(csv, "k,re_R,im_R,abs_R2,unitarity_defect\n1,0,0,0,0\n2,0,0,0,0\n");
}
