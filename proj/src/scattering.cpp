#include "lt/scattering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lt/constants.hpp"
#include "lt/io.hpp"
#include "lt/sturm.hpp"

namespace lt {

namespace {

using cd = std::complex<double>;

void require_line(const Potential& v, const char* who) {
  if (v.domain().kind() != Domain::Kind::full_line)
    throw precondition_error(std::string(who) + ": scattering needs a potential on the whole line");
}

double abs_mass(const Potential& v, const std::optional<SignSplit>& split, double a, double b) {
  if (!split) return integrate(v, a, b);
  return integrate(split->plus, a, b) + integrate(split->minus, a, b);
}

// Exact propagator of u'' = -q u over length h.
Eigen::Matrix2d constant_step(double q, double h) {
  Eigen::Matrix2d m;
  if (q > 0) {
    const double w = std::sqrt(q), c = std::cos(w * h), s = std::sin(w * h);
    m << c, s / w, -w * s, c;
  } else if (q < 0) {
    const double w = std::sqrt(-q), c = std::cosh(w * h), s = std::sinh(w * h);
    m << c, s / w, w * s, c;
  } else {
    m << 1.0, h, 0.0, 1.0;
  }
  return m;
}

// Exponential of the traceless [[d, h], [-h q, -d]].
Eigen::Matrix2d traceless_exp(double d, double h, double q) {
  const double mu2 = d * d - h * h * q;
  double c, sc;  // cosh(mu), sinh(mu) / mu, continued to mu^2 < 0
  if (std::fabs(mu2) < 1e-8) {
    c = 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0;
    sc = 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0;
  } else if (mu2 > 0) {
    const double m = std::sqrt(mu2);
    c = std::cosh(m);
    sc = std::sinh(m) / m;
  } else {
    const double m = std::sqrt(-mu2);
    c = std::cos(m);
    sc = std::sin(m) / m;
  }
  Eigen::Matrix2d e;
  e << c + sc * d, sc * h, -sc * h * q, c - sc * d;
  return e;
}

// Fourth-order Magnus step for Phi' = A(x) Phi, A = [[0, 1], [-(V + k^2), 0]].
// Each step is an exact exponential, so det Phi = 1 up to rounding and
// the oscillation at large k costs nothing.
Eigen::Matrix2d magnus_step(const Potential& v, double x, double h, double k2) {
  constexpr double g = 0.28867513459481288225;  // sqrt(3) / 6
  const double q1 = v(x + (0.5 - g) * h) + k2, q2 = v(x + (0.5 + g) * h) + k2;
  const double d = std::numbers::sqrt3 / 12.0 * h * h * (q2 - q1);
  return traceless_exp(d, h, 0.5 * (q1 + q2));
}

// Adaptive Magnus integration with step doubling.
Eigen::Matrix2d magnus_range(const Potential& v, double a, double b, double k2, const Tolerance& tol) {
  // compare steps with u' measured in units of the local wavenumber
  const double kappa = std::sqrt(std::max(std::fabs(v.sup()), std::fabs(v.inf())) + k2) + 1.0;
  auto norm = [kappa](const Eigen::Matrix2d& m) {
    return std::max({std::fabs(m(0, 0)), std::fabs(m(0, 1)) * kappa, std::fabs(m(1, 0)) / kappa, std::fabs(m(1, 1))});
  };
  Eigen::Matrix2d y = Eigen::Matrix2d::Identity();
  double x = a;
  double h = std::min(b - a, 0.1);
  long steps = 0;
  while (x < b) {
    if (++steps > 50'000'000) throw numerical_error("transfer_matrix: step budget exhausted");
    if (x + h > b) h = b - x;
    const Eigen::Matrix2d full = magnus_step(v, x, h, k2);
    const Eigen::Matrix2d half = magnus_step(v, x + 0.5 * h, 0.5 * h, k2) * magnus_step(v, x, 0.5 * h, k2);
    const double en = norm(half - full) / 15.0 / (tol.abs + tol.rel);
    if (en <= 1.0) {
      x += h;
      y = half * y;
    }
    const double factor = (en == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < 1e-14 * std::max(1.0, std::fabs(x))) throw numerical_error("transfer_matrix: step size underflow");
  }
  return y;
}

Eigen::Matrix2cd plane_waves(double k, double x) {
  const cd ik(0.0, k);
  const cd ep = std::exp(ik * x), em = std::exp(-ik * x);
  Eigen::Matrix2cd w;
  w << ep, em, ik * ep, -ik * em;
  return w;
}

}  // namespace

Interval scattering_window(const Potential& v, double tail) {
  const Interval s = v.support();
  if (s.empty()) return {0.0, 0.0};
  if (std::isfinite(s.lo) && std::isfinite(s.hi)) return s;
  std::optional<SignSplit> split;
  if (v.inf() < 0.0) split = sign_split(v);
  const Interval c = v.core();
  double lo = std::isfinite(s.lo) ? s.lo : c.lo, hi = std::isfinite(s.hi) ? s.hi : c.hi;
  double step = std::max(1.0, c.length() / 4.0);
  while (!std::isfinite(s.hi) && abs_mass(v, split, hi, kInf) > 0.5 * tail) {
    hi += step;
    step *= 2.0;
  }
  step = std::max(1.0, c.length() / 4.0);
  while (!std::isfinite(s.lo) && abs_mass(v, split, -kInf, lo) > 0.5 * tail) {
    lo -= step;
    step *= 2.0;
  }
  return {lo, hi};
}

Eigen::Matrix2d transfer_matrix(const Potential& v, const Interval& window, double k, const Tolerance& tol) {
  Eigen::Matrix2d phi = Eigen::Matrix2d::Identity();
  if (window.empty()) return phi;
  std::vector<double> cuts{window.lo, window.hi};
  for (double x : v.kinks())
    if (x > window.lo && x < window.hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double k2 = k * k;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const auto c = v.constant_on(a, b);
    const Eigen::Matrix2d step = c ? constant_step(*c + k2, b - a) : magnus_range(v, a, b, k2, tol);
    phi = step * phi;
  }
  return phi;
}

Amplitudes amplitudes(const Potential& v, const Interval& window, double k, const Tolerance& tol) {
  if (!(k > 0.0)) throw precondition_error("amplitudes: k must be positive");
  const Eigen::Matrix2d phi = transfer_matrix(v, window, k, tol);
  const Eigen::Matrix2cd m =
      plane_waves(k, window.hi).inverse() * phi.cast<cd>() * plane_waves(k, window.lo);
  Amplitudes out;
  out.r = -m(1, 0) / m(1, 1);
  out.t = 1.0 / m(1, 1);
  out.det_defect = std::fabs(phi.determinant() - 1.0);
  return out;
}

std::vector<double> default_k_grid(std::size_t points) {
  if (points < 2) throw precondition_error("default_k_grid: need at least 2 points");
  std::vector<double> k(points);
  const double lo = std::log(0.01), hi = std::log(100.0);
  for (std::size_t i = 0; i < points; ++i)
    k[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
  return k;
}

QuadratureResult log_integral(const Potential& v, const Tolerance& tol) {
  require_line(v, "log_integral");
  tol.validate();
  const Interval window = scattering_window(v);
  if (window.empty()) return {0.0, 0.0};
  const Tolerance ode{tol.abs * 0.1, tol.rel * 0.1, tol.max_iter};
  // ln(1 - |R|^2) = ln |T|^2, which stays accurate as |R| -> 1 at small k;
  // R(-k) = conj R(k) doubles the half-line integral
  auto f = [&](double k) {
    if (k <= 0.0) return 0.0;
    const auto a = amplitudes(v, window, k, ode);
    return 2.0 / std::numbers::pi * std::log(std::norm(a.t));
  };
  // ln|T|^2 ~ 2 ln k at k -> 0 in the generic case; the first stretch is
  // bounded by that growth instead of sampled
  const double k0 = std::min(1e-6, tol.abs);
  const auto head = integrate_de(f, k0, 1.0, tol);
  double total = head.value, error = head.error + k0 * (std::fabs(f(k0)) + 4.0 / std::numbers::pi);
  double a = 1.0;
  constexpr double kmax = 1 << 20;
  for (;;) {
    const auto piece = integrate_adaptive(f, a, 2.0 * a, tol);
    total += piece.value;
    error += piece.error;
    a *= 2.0;
    const double small = std::max(tol.abs, tol.rel * std::fabs(total));
    if ((a >= 16.0 && std::fabs(piece.value) <= small) || a >= kmax) break;
  }
  // the integrand decays at least like k^-2 beyond the last piece
  const double tail = f(a) * a;
  total += tail;
  error += std::fabs(tail);
  return {total, error};
}

ScatteringData reflection_coefficient(const Potential& v, const std::vector<double>& k_grid, const Tolerance& tol) {
  require_line(v, "reflection_coefficient");
  tol.validate();
  ScatteringData out;
  const Interval window = scattering_window(v);
  out.x_left = window.lo;
  out.x_right = window.hi;
  const Tolerance ode{tol.abs * 0.1, tol.rel * 0.1, tol.max_iter};
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid[i];
    if (!(k > 0.0)) throw precondition_error("reflection_coefficient: k must be positive");
    if (i > 0 && !(k > k_grid[i - 1])) throw precondition_error("reflection_coefficient: k grid must increase");
    const auto a = amplitudes(v, window, k, ode);
    const double defect = std::fabs(1.0 - std::norm(a.r) - std::norm(a.t));
    if (defect > 100.0 * tol.abs) {
      std::ostringstream msg;
      msg << "reflection_coefficient: unitarity defect " << defect << " at k = " << k;
      throw numerical_error(msg.str());
    }
    out.k_grid.push_back(k);
    out.r_values.push_back(a.r);
    out.t_values.push_back(a.t);
    out.unitarity_defect.push_back(defect);
  }
  const auto li = log_integral(v, tol);
  out.log_integral = li.value;
  out.log_integral_error = li.error;
  return out;
}

SumRule sum_rule_residual(const Potential& v, const Tolerance& tol) {
  require_line(v, "sum_rule_residual");
  SumRule s{};
  s.integral_v = integrate(v);
  const Tolerance eig{std::max(tol.abs, 1e-9), std::max(tol.rel, 1e-9), tol.max_iter};
  const RieszMean rm = riesz_mean(solve_line(v, eig), 0.5);
  s.four_sum_sqrt = 4.0 * rm.value;
  const auto li = log_integral(v, tol);
  s.log_term = li.value;
  s.residual = s.integral_v - s.four_sum_sqrt - s.log_term;
  s.error = 4.0 * rm.error + li.error;
  return s;
}

Theorem2Check theorem2_check(const Potential& v, std::optional<double> l_half, const Tolerance& tol) {
  require_line(v, "theorem2_check");
  const double lh = l_half.value_or(varsigma(3.0) / 3.0);
  if (!(lh > 0.0)) throw precondition_error("theorem2_check: L_half must be positive");
  const auto split = sign_split(v);
  const auto li = log_integral(v, tol);
  Theorem2Check c{};
  c.lhs = std::fabs(li.value);
  c.rhs = integrate(split.minus) + (4.0 * lh - 1.0) * integrate(split.plus);
  c.error = li.error;
  c.pass = c.lhs <= c.rhs + c.error;
  return c;
}

std::string scattering_csv(const ScatteringData& data) {
  std::ostringstream out;
  out << "k,re_R,im_R,abs_R2,unitarity_defect\n";
  for (std::size_t i = 0; i < data.k_grid.size(); ++i) {
    const auto r = data.r_values[i];
    out << format_number(data.k_grid[i]) << ',' << format_number(r.real()) << ',' << format_number(r.imag()) << ','
        << format_number(std::norm(r)) << ',' << format_number(data.unitarity_defect[i]) << '\n';
  }
  return out.str();
}

}  // namespace lt
