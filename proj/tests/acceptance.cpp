// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lt/bracketing.hpp"
#include "lt/constants.hpp"
#include "lt/io.hpp"
#include "lt/kyfan.hpp"
#include "lt/random.hpp"
#include "lt/scattering.hpp"
#include "lt/sturm.hpp"

using namespace lt;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(double x) { return format_number(x); }

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt <= budget_s;
  const bool ok = r.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-34s %s [%.3g s%s]\n", ok ? "PASS" : "FAIL", id, name, r.detail.c_str(), dt,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

bool inside(double x, double lo, double hi) { return lo < x && x < hi; }

}  // namespace

int main() {
  criterion(1, "varsigma(3)/3 below 1.005", 1e-3, [] {
    const double r = varsigma(3.0) / 3.0;
    return Outcome{inside(r, 1.0040, 1.0050), "value " + fmt(r)};
  });

  criterion(2, "L_star(1) below 0.853", 1e-3, [] {
    const double l = star_constant(1.0);
    return Outcome{inside(l, 0.8525, 0.8530), "value " + fmt(l)};
  });

  criterion(3, "L_char(1) below 0.4341", 1e-3, [] {
    const double l = char_interp_constant(1.0);
    return Outcome{inside(l, 0.4335, 0.4341), "value " + fmt(l)};
  });

  criterion(4, "L_GGM(1) = 1.269", 1e-2, [] {
    const double l = ggm_constant(1.0);
    return Outcome{std::fabs(l - 1.269) <= 1e-3, "value " + fmt(l)};
  });

  criterion(5, "L_LT(1) = 4/3", 1e-3, [] {
    const double l = lt_constant(1.0);
    return Outcome{std::fabs(l - 4.0 / 3.0) <= 1e-12, "value " + fmt(l)};
  });

  criterion(6, "L_one(1) = 0.24504", 1e-3, [] {
    const double l = one_state_constant(1.0);
    return Outcome{std::fabs(l - 0.24504) <= 1e-4, "value " + fmt(l)};
  });

  criterion(7, "crossover of L_dstar and L_star", 5.0, [] {
    const double g = crossover();
    return Outcome{g >= 1.11 && g <= 1.17, "gamma " + fmt(g)};
  });

  criterion(8, "density constants", 1e-3, [] {
    const auto d = density_constants();
    return Outcome{d.k32 >= 0.203 && d.k11_lower > 0.497, "K_3/2 >= " + fmt(d.k32) + ", K_1 >= " + fmt(d.k11_lower)};
  });

  criterion(9, "L_dstar(1.49) near 3/16", 2.0, [] {
    const double l = doublestar_constant(1.49);
    return Outcome{std::fabs(l - 0.1875) < 0.01, "value " + fmt(l) + ", distance " + fmt(std::fabs(l - 0.1875))};
  });

  criterion(10, "Theta numeric vs closed", 5.0, [] {
    double worst = 0.0;
    for (double eta : {0.25, 0.5, 0.75})
      for (auto [p0, p1] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}}) {
        const ThetaParams p{eta, p0, p1};
        worst = std::max(worst, std::fabs(theta_weight(p, ThetaMode::numeric) - theta_weight(p, ThetaMode::closed)));
      }
    return Outcome{worst <= 1e-6, "max difference " + fmt(worst)};
  });

  criterion(11, "Poschl-Teller spectrum {-4, -1}", 5.0, [] {
    const auto s = solve_line(poschl_teller(2.0));
    if (s.size() != 2 || !s.threshold.empty()) return Outcome{false, std::to_string(s.size()) + " eigenvalues"};
    const double truth[2] = {-4.0, -1.0};
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double err = std::fabs(s.eigenvalues[i] - truth[i]);
      worst = std::max(worst, err);
      ok = ok && err <= 1e-6 && err <= s.radii[i];
    }
    return Outcome{ok, "max error " + fmt(worst) + ", radii " + fmt(s.radii[0]) + ", " + fmt(s.radii[1])};
  });

  criterion(12, "one Neumann state per l int V = 3", 30.0, [] {
    int intervals = 0, bad = 0;
    for (const auto& v : random_piecewise_suite(kDefaultSeed, 50, Domain::half_line())) {
      const auto p = build_partition(v);
      for (std::size_t k = 0; k < p.intervals(); ++k) {
        ++intervals;
        const auto s = solve_interval(v, p.breakpoints[k], p.breakpoints[k + 1], EndCondition::neumann);
        if (s.size() != 1 || !s.threshold.empty()) ++bad;
      }
    }
    return Outcome{bad == 0 && intervals > 0, std::to_string(intervals) + " intervals, " + std::to_string(bad) + " violations"};
  });

  criterion(13, "sum sqrt|E| sandwich on random V", 60.0, [] {
    int bad = 0;
    double lo_ratio = INFINITY, hi_ratio = 0.0;
    for (const auto& v : random_piecewise_suite(kDefaultSeed, 20)) {
      const auto c = certify_theorem1(v);
      const double m = c.integral_v, s = c.sum_sqrt.value, e = c.sum_sqrt.error;
      lo_ratio = std::min(lo_ratio, s / m);
      hi_ratio = std::max(hi_ratio, s / m);
      if (!(0.25 * m <= s + e && s - e <= 1.00482 * m)) ++bad;
    }
    return Outcome{bad == 0, "sum/int V in [" + fmt(lo_ratio) + ", " + fmt(hi_ratio) + "], " + std::to_string(bad) + " violations"};
  });

  criterion(14, "partition of the unit-depth well", 1.0, [] {
    const auto p = build_partition(square_well(3, 0, 2, Domain::half_line()));
    const bool ok = p.breakpoints.size() == 4 && std::fabs(p.breakpoints[0]) <= 1e-8 &&
                    std::fabs(p.breakpoints[1] - 1) <= 1e-8 && std::fabs(p.breakpoints[2] - 2) <= 1e-8 &&
                    std::isinf(p.breakpoints[3]);
    std::string bp;
    for (double b : p.breakpoints) bp += (bp.empty() ? "" : ", ") + fmt(b);
    return Outcome{ok, "breakpoints [" + bp + ")"};
  });

  criterion(15, "trace identity residuals", 60.0, [] {
    double worst = 0.0;
    for (const Potential& v : {poschl_teller(1.0), poschl_teller(2.0), square_well(2, -1, 1)})
      worst = std::max(worst, std::fabs(sum_rule_residual(v).residual));
    return Outcome{worst < 1e-3, "max residual " + fmt(worst)};
  });

  criterion(16, "reflection integral estimate", 30.0, [] {
    const std::vector<Potential> suite{
        zero_potential(),
        poschl_teller(1.0),
        poschl_teller(2.0),
        square_well(2, -1, 1),
        square_well(5, -0.5, 0.5),
        square_well(0.3, -3, 3),
        gaussian(2, 0, 1),
        sum({square_well(3, -1, 0), multiple(-1, square_well(1, 0, 1.5))}),
        sum({gaussian(3, -1, 0.5), gaussian(-1, 1, 0.7)}),
    };
    int bad = 0;
    double tightest = INFINITY;
    for (const auto& v : suite) {
      const auto t = theorem2_check(v);
      if (!t.pass) ++bad;
      tightest = std::min(tightest, t.rhs - t.lhs);
    }
    return Outcome{bad == 0, std::to_string(suite.size()) + " potentials, smallest slack " + fmt(tightest)};
  });

  criterion(17, "splitting inequality", 30.0, [] {
    for (int n = 1; n <= 8; ++n)
      for (int k = 1; k <= 10000; ++k)
        if (interleave_s(k, n) + interleave_l(k, n) - 1 != k)
          return Outcome{false, "index identity fails at N = " + std::to_string(n) + ", k = " + std::to_string(k)};
    const Potential sw = square_well(4, -1, 1);
    const Potential half = multiple(0.5, sw);
    const auto even = verify_splitting(sw, {0.5, half, half, 1}, 6);
    const Potential g = sum({gaussian(3, -0.5, 0.6), gaussian(2, 1, 0.8)});
    const auto uneven = verify_splitting(g, {0.3, gaussian(3, -0.5, 0.6), gaussian(2, 1, 0.8), 2, true}, 6);
    return Outcome{even.pass() && uneven.pass(), std::string("index identity ok; even split ") +
                                                     (even.pass() ? "holds" : "fails") + ", uneven split " +
                                                     (uneven.pass() ? "holds" : "fails")};
  });

  criterion(18, "scaling invariance of LT ratios", 30.0, [] {
    const Potential v = sum({gaussian(2, 0.3, 0.8), square_well(1, -1.5, 0.5)});
    const Tolerance tol{1e-10, 1e-10, 200};
    const auto base = solve_line(v, tol);
    double worst = 0.0;
    for (double alpha : {0.5, 2.0}) {
      const auto s = solve_line(scaled(alpha, v), tol);
      for (double g : {0.5, 1.0, 1.5}) {
        const double r0 = riesz_mean(base, g).value / lp_integral(v, g + 0.5);
        const double r1 = riesz_mean(s, g).value / lp_integral(scaled(alpha, v), g + 0.5);
        worst = std::max(worst, std::fabs(r1 / r0 - 1));
      }
    }
    return Outcome{worst <= 1e-6, "max relative change " + fmt(worst)};
  });

  criterion(19, "weak coupling ground state", 10.0, [] {
    const double alpha = 0.01;
    const Potential v = square_well(1, -1, 1);
    const auto s = solve_line(multiple(alpha, v), {1e-10, 1e-10, 200});
    if (s.empty()) return Outcome{false, "no bound state"};
    const double ratio = std::sqrt(-s.eigenvalues[0]) / (0.5 * alpha * integrate(v));
    return Outcome{ratio >= 0.9 && ratio <= 1.0, "ratio " + fmt(ratio)};
  });

  std::printf("%d of 19 criteria failed\n", failures);
  return failures;
}
