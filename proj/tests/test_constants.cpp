#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lt/constants.hpp"

using namespace lt;

namespace {

// Plain bisection on x tanh x - y, independent of find_root.
double varsigma_bisect(double y) {
  double lo = 0.0, hi = y + 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::tanh(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double classical_tgamma(double g) { return std::tgamma(g + 1) / (2 * std::sqrt(std::numbers::pi) * std::tgamma(g + 1.5)); }

// For (p0, p1) = (1, 2) the inner infimum is t for t <= 1/2 and 1 - 1/(4t)
// beyond, so the t-integral is elementary.
double theta_12_elementary(double eta) {
  return std::pow(0.5, 1 - eta) / (1 - eta) + std::pow(0.5, -eta) / eta - 0.25 * std::pow(0.5, -eta - 1) / (eta + 1);
}

double ggm_grid(double g) {
  double best = INFINITY;
  const double hi = std::min(1.5, g + 0.5);
  for (int i = 1; i < 200000; ++i) {
    const double m = 1 + (hi - 1) * i / 200000.0, a = g + 0.5 - m;
    const double val = std::pow(m - 1, m - 1) * std::tgamma(2 * m) * std::pow(g, g + 1) * std::tgamma(a) /
                       (std::pow(2, 2 * m - 1) * std::pow(m, m - 1) * std::tgamma(m) * std::tgamma(g + 1.5) *
                        std::pow(m - 0.5, m - 0.5) * std::pow(a, a));
    best = std::min(best, val);
  }
  return best;
}

}  // namespace

TEST(Varsigma, InvertsTheta) {
  EXPECT_EQ(theta_fn(0.0), 0.0);
  EXPECT_NEAR(theta_fn(1.0), std::tanh(1.0), 1e-15);
  EXPECT_EQ(varsigma(0.0), 0.0);
  for (double y : {0.1, 1.0, 3.0, 10.0}) {
    EXPECT_NEAR(theta_fn(varsigma(y)), y, 1e-12);
    EXPECT_NEAR(varsigma(y), varsigma_bisect(y), 1e-12);
  }
  EXPECT_NEAR(varsigma(theta_fn(2.0)), 2.0, 1e-12);
  EXPECT_NEAR(varsigma(3.0) / 3.0, 1.0048275920, 1e-9);
  EXPECT_LT(varsigma(3.0) / 3.0, 1.005);
  EXPECT_THROW(varsigma(-1.0), precondition_error);
}

TEST(Constants, ClassicalAndLiebThirring) {
  EXPECT_NEAR(classical_constant(1.5), 3.0 / 16.0, 1e-14);
  EXPECT_NEAR(classical_constant(0.5), 0.25, 1e-14);
  EXPECT_NEAR(classical_constant(1.0), 2.0 / (3.0 * std::numbers::pi), 1e-14);
  for (double g : {0.0, 0.3, 0.9, 1.7}) EXPECT_NEAR(classical_constant(g), classical_tgamma(g), 1e-13);
  EXPECT_NEAR(lt_constant(1.0), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(lt_constant(1.5), std::pow(1.5, 2.5) / (2 * std::numbers::sqrt2), 1e-13);
  EXPECT_THROW(lt_constant(0.5), precondition_error);
}

TEST(Constants, GlaserGrosseMartin) {
  EXPECT_NEAR(ggm_constant(1.0), 1.269, 1e-3);
  for (double g : {0.8, 1.0, 1.4}) EXPECT_NEAR(ggm_constant(g), ggm_grid(g), 1e-7);
  EXPECT_THROW(ggm_constant(0.5), precondition_error);
}

TEST(Constants, OneStateStarAndCharacteristic) {
  EXPECT_NEAR(one_state_constant(0.5), 0.5, 1e-14);
  EXPECT_NEAR(one_state_constant(1.0), 2 * classical_tgamma(1.0) * std::sqrt(1.0 / 3.0), 1e-13);
  EXPECT_NEAR(one_state_constant(1.5), 3.0 / 16.0, 1e-12);
  const double s3 = varsigma_bisect(3.0);
  EXPECT_NEAR(star_constant(1.0), 4 * s3 * classical_tgamma(1.0) / 3, 1e-12);
  EXPECT_LT(star_constant(1.0), 0.853);
  EXPECT_NEAR(star_constant(0.5), s3 / 3, 1e-12);
  EXPECT_NEAR(star_constant(1.5), s3 / 4, 1e-12);
  EXPECT_NEAR(char_interp_constant(1.0), std::sqrt(s3 / 3 * 3.0 / 16.0), 1e-12);
  EXPECT_LT(char_interp_constant(1.0), 0.4341);
  EXPECT_NEAR(char_interp_constant(0.5 + 1e-9), s3 / 3, 1e-8);
  EXPECT_NEAR(char_interp_constant(1.5 - 1e-9), 3.0 / 16.0, 1e-8);
  EXPECT_THROW(char_interp_constant(0.5), precondition_error);
  EXPECT_THROW(star_constant(1.6), precondition_error);
}

TEST(Constants, OrderingOnGrid) {
  for (int i = 0; i <= 100; ++i) {
    const double g = 0.51 + 0.98 * i / 100.0;
    EXPECT_LE(one_state_constant(g), star_constant(g)) << g;
    EXPECT_LT(classical_constant(g), one_state_constant(g)) << g;
    EXPECT_LE(char_interp_constant(g), star_constant(g)) << g;
  }
  EXPECT_NEAR(classical_constant(1.5), one_state_constant(1.5), 1e-10);
  EXPECT_LT(std::min(star_constant(1.0), doublestar_constant(1.0)), std::min(lt_constant(1.0), ggm_constant(1.0)));
}

TEST(Theta, ClosedFormOneTwo) {
  EXPECT_NEAR(theta_weight({0.5, 1.0, 2.0}), 8 * std::numbers::sqrt2 / 3, 1e-13);
  for (double eta : {0.1, 0.25, 0.5, 0.75, 0.9}) EXPECT_NEAR(theta_weight({eta, 1.0, 2.0}), theta_12_elementary(eta), 1e-12);
}

TEST(Theta, NumericMatchesClosed) {
  for (double eta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (auto [p0, p1] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}}) {
      const ThetaParams p{eta, p0, p1};
      EXPECT_NEAR(theta_weight(p, ThetaMode::numeric), theta_weight(p, ThetaMode::closed), 1e-6) << eta << ' ' << p0;
    }
  }
}

TEST(Theta, InnerInfimumStaysInUnitInterval) {
  // sampling y1 outside [0, 1] never beats the best value inside
  for (double t : {0.05, 0.7, 3.0, 40.0}) {
    auto h = [t](double y1) { return std::pow(std::fabs(1 - y1), 0.5) + t * std::pow(std::fabs(y1), 1.5); };
    double inside = INFINITY, outside = INFINITY;
    for (int i = 0; i <= 4000; ++i) inside = std::min(inside, h(i / 4000.0));
    for (int i = 1; i <= 4000; ++i) outside = std::min({outside, h(1 + i / 400.0), h(-i / 400.0)});
    EXPECT_LT(inside, outside) << t;
  }
}

TEST(Theta, Preconditions) {
  EXPECT_THROW(theta_weight({0.0, 1.0, 2.0}), precondition_error);
  EXPECT_THROW(theta_weight({1.0, 1.0, 2.0}), precondition_error);
  EXPECT_THROW(theta_weight({0.5, 1.0, 1.0}), precondition_error);
  EXPECT_THROW(theta_weight({0.5, 1.0, 3.0}), precondition_error);
  EXPECT_NO_THROW(theta_weight({0.5, 1.0, 3.0}, ThetaMode::numeric));
}

TEST(MFactor, SearchAndSymmetry) {
  auto brute = [](double eta) {
    double best = INFINITY;
    for (int k = 1; k <= 5000; ++k)
      for (double n : {double(k), 1.0 / k}) best = std::min(best, std::pow(1 + n, 1 - eta) * std::pow(1 + 1 / n, eta));
    return best;
  };
  const auto half = m_factor(0.5);
  EXPECT_NEAR(half.value, 2.0, 1e-15);
  EXPECT_EQ(half.num, 1);
  EXPECT_EQ(half.den, 1);
  for (double eta : {0.1, 0.3}) {
    const auto a = m_factor(eta), b = m_factor(1 - eta);
    EXPECT_NEAR(a.value, b.value, 1e-13);
    EXPECT_EQ(a.num, b.den);
    EXPECT_EQ(a.den, b.num);
    EXPECT_NEAR(a.value, brute(eta), 1e-14);
  }
  EXPECT_LT(m_factor(0.01).value, 1.08);
  EXPECT_LT(m_factor(0.99).value, 1.08);
  EXPECT_THROW(m_factor(1.0), precondition_error);
}

TEST(DoubleStar, CrossoverAndSides) {
  EXPECT_LT(doublestar_constant(1.25), star_constant(1.25));
  EXPECT_GT(doublestar_constant(0.75), star_constant(0.75));
  EXPECT_LT(doublestar_constant(1.3) - star_constant(1.3), 0);
  EXPECT_GT(doublestar_constant(1.05) - star_constant(1.05), 0);
  const double g = crossover();
  EXPECT_GE(g, 1.11);
  EXPECT_LE(g, 1.17);
  EXPECT_NEAR(doublestar_constant(g), star_constant(g), 1e-8);
  // decreasing toward the classical value as gamma grows
  EXPECT_GT(doublestar_constant(1.3), doublestar_constant(1.49));
  EXPECT_GT(doublestar_constant(1.49), 3.0 / 16.0);
}

TEST(DensityConstants, ConversionsAndRoundTrip) {
  const auto d = density_constants();
  EXPECT_GE(d.k32, 0.203);
  EXPECT_GT(d.k11_lower, 0.497);
  EXPECT_NEAR(2 / std::sqrt(27 * d.k32), star_constant(1.0), 1e-12);
  const auto e = density_constants(1.004819, 0.852923);
  EXPECT_NEAR(e.k32, 4 / (27 * 0.852923 * 0.852923), 1e-15);
  EXPECT_NEAR(e.k11_lower, 1 / (2 * 1.004819), 1e-15);
  EXPECT_THROW(density_constants(0.0, 1.0), precondition_error);
}

TEST(ConstantsCsv, RowsAndEmptyCells) {
  const auto csv = constants_csv({constants_row(0.5), constants_row(1.0)}, true);
  const auto nl = csv.find('\n');
  EXPECT_EQ(csv.substr(0, nl), "gamma,L_cl,L_LT,L_GGM,L_one,L_star,L_char,L_dstar,L_best");
  const auto second = csv.find('\n', nl + 1);
  const std::string row_half = csv.substr(nl + 1, second - nl - 1);
  EXPECT_EQ(row_half.substr(0, 8), "0.5,0.25");
  EXPECT_NE(row_half.find(",,,0.5,"), std::string::npos);
  const auto row = constants_row(1.0);
  ASSERT_TRUE(row.best());
  EXPECT_EQ(*row.best(), std::min(*row.l_star, *row.l_dstar));
  EXPECT_NE(csv.find("1,0.212206590789193,1.33333333333333,"), std::string::npos);
}
