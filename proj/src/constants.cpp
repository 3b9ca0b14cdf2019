#include "lt/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lt/io.hpp"

namespace lt {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void require_gamma(double gamma, double lo, double hi, bool open, const char* who) {
  const bool ok = open ? (gamma > lo && gamma < hi) : (gamma >= lo && gamma <= hi);
  if (!ok || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << who << ": gamma must lie in " << (open ? "(" : "[") << lo << ", " << hi << (open ? ")" : "]");
    throw precondition_error(msg.str());
  }
}

double varsigma3() {
  static const double value = varsigma(3.0);
  return value;
}

struct InnerMin {
  double value;
  double argmin;
};

// inf over y in [0, 1] of (1 - y)^p0 + t y^p1; grid search first because the
// objective can have a local minimum at each end and one inside.
InnerMin inner_infimum(double t, double p0, double p1) {
  auto h = [&](double y) { return std::pow(1.0 - y, p0) + t * std::pow(y, p1); };
  constexpr int n = 64;
  int best = 0;
  double best_val = h(0.0);
  for (int i = 1; i <= n; ++i) {
    const double val = h(static_cast<double>(i) / n);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  InnerMin out{best_val, static_cast<double>(best) / n};
  const double lo = std::max(0.0, (best - 1.0) / n), hi = std::min(1.0, (best + 1.0) / n);
  const auto m = minimize_1d(h, lo, hi, {1e-15, 1e-15, 500});
  if (m.value < out.value) out = {m.value, m.argmin};
  for (double end : {0.0, 1.0}) {
    const double val = h(end);
    if (val <= out.value) out = {val, end};
  }
  return out;
}

// Branch label of the minimizer: 0 at y = 0, 2 at y = 1, 1 inside.
int branch(const InnerMin& m) {
  if (m.argmin <= 1e-9) return 0;
  if (m.argmin >= 1.0 - 1e-9) return 2;
  return 1;
}

// Points in log t where the inner minimizer jumps or leaves an endpoint.
std::vector<double> theta_breaks(double p0, double p1) {
  std::vector<double> out;
  constexpr double s_lo = -12.0, s_hi = 12.0;
  constexpr int n = 240;
  auto at = [&](double s) { return inner_infimum(std::exp(s), p0, p1); };
  double s_prev = s_lo;
  InnerMin prev = at(s_prev);
  for (int i = 1; i <= n; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / n;
    const InnerMin cur = at(s);
    const bool class_change = branch(cur) != branch(prev);
    const bool jump = std::fabs(cur.argmin - prev.argmin) > 0.2;
    if (class_change || jump) {
      double a = s_prev, b = s;
      for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        const InnerMin m = at(mid);
        const bool left_side = class_change ? branch(m) == branch(prev)
                                            : std::fabs(m.argmin - prev.argmin) < std::fabs(m.argmin - cur.argmin);
        (left_side ? a : b) = mid;
      }
      out.push_back(0.5 * (a + b));
    }
    s_prev = s;
    prev = cur;
  }
  return out;
}

double theta_numeric(double eta, double p0, double p1) {
  // t = e^s turns t^(-eta-1) dt into e^(-eta s) ds
  auto integrand = [&](double s) {
    const double t = std::exp(s);
    if (t == 0.0 || !std::isfinite(t)) return 0.0;
    const double f = inner_infimum(t, p0, p1).value;
    return f > 0.0 ? std::exp(std::log(f) - eta * s) : 0.0;
  };
  std::vector<double> cuts = theta_breaks(p0, p1);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const Tolerance tol{1e-12, 1e-12, 200};
  double total = integrate_de(integrand, -kInf, cuts.front(), tol).value;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate_de(integrand, cuts[i], cuts[i + 1], tol).value;
  total += integrate_de(integrand, cuts.back(), kInf, tol).value;
  return total;
}

double theta_half_closed(double eta) {
  const double tk = 2.0 / 3.0 * std::sqrt(1.0 + 2.0 / std::sqrt(3.0));
  const double u0 = std::sqrt(2.0 / (2.0 + std::sqrt(3.0)));
  // u = 1 - s^(2/eta) absorbs the (1-u)^((eta-2)/2) endpoint singularity
  const double s0 = std::pow(1.0 - u0, eta / 2.0);
  auto piece = [&](double expo) {
    auto f = [&](double s) {
      const double u = 1.0 - std::pow(s, 2.0 / eta);
      return u * std::pow(1.0 + u, expo);
    };
    return 2.0 / eta * integrate_de(f, 0.0, s0, {1e-14, 1e-14, 200}).value;
  };
  const double i0 = piece((eta - 1.0) / 2.0);
  const double j = piece((eta - 3.0) / 2.0);
  return std::pow(tk, 1.0 - eta) / (1.0 - eta) + std::numbers::sqrt2 / 3.0 * std::pow(1.5, eta) * (i0 + j);
}

}  // namespace

double theta_fn(double x) {
  if (!(x >= 0.0)) throw precondition_error("theta_fn: x must be >= 0");
  return x * std::tanh(x);
}

double varsigma(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw precondition_error("varsigma: y must be finite and >= 0");
  if (y == 0.0) return 0.0;
  // x tanh x > x - 1, so the root lies below y + 1
  return find_root([y](double x) { return x * std::tanh(x) - y; }, 0.0, y + 2.0, {1e-15, 1e-15, 500});
}

double classical_constant(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw precondition_error("classical_constant: gamma must be >= 0");
  return gamma_fn(gamma + 1.0) / (2.0 * kSqrtPi * gamma_fn(gamma + 1.5));
}

double lt_constant(double gamma) {
  if (!(gamma > 0.5) || !std::isfinite(gamma)) throw precondition_error("lt_constant: gamma must exceed 1/2");
  return std::pow(gamma, gamma + 1.0) /
         (std::numbers::sqrt2 * std::pow(gamma - 0.5, gamma + 0.5) * (gamma + 0.5));
}

double ggm_constant(double gamma) {
  if (!(gamma > 0.5) || !std::isfinite(gamma)) throw precondition_error("ggm_constant: empty range for m");
  const double g = gamma;
  auto expr = [g](double m) {
    const double a = g + 0.5 - m;
    const double num = std::pow(m - 1.0, m - 1.0) * gamma_fn(2.0 * m) * std::pow(g, g + 1.0) * gamma_fn(a);
    const double den = std::pow(2.0, 2.0 * m - 1.0) * std::pow(m, m - 1.0) * gamma_fn(m) * gamma_fn(g + 1.5) *
                       std::pow(m - 0.5, m - 0.5) * std::pow(a, a);
    return num / den;
  };
  const double lo = 1.0 + 1e-6, hi = std::min(1.5, g + 0.5) - 1e-6;
  if (!(lo < hi)) throw precondition_error("ggm_constant: empty range for m");
  return minimize_1d(expr, lo, hi, {1e-12, 1e-12, 500}).value;
}

double one_state_constant(double gamma) {
  if (!(gamma >= 0.5) || !std::isfinite(gamma)) throw precondition_error("one_state_constant: gamma must be >= 1/2");
  const double e = gamma - 0.5;
  const double ratio = e / (gamma + 0.5);
  const double factor = (e == 0.0) ? 1.0 : std::pow(ratio, e);
  return 2.0 * classical_constant(gamma) * factor;
}

double star_constant(double gamma) {
  require_gamma(gamma, 0.5, 1.5, false, "star_constant");
  return 4.0 * varsigma3() * classical_constant(gamma) / 3.0;
}

double char_interp_constant(double gamma) {
  require_gamma(gamma, 0.5, 1.5, true, "char_interp_constant");
  return std::pow(varsigma3() / 3.0, 1.5 - gamma) * std::pow(3.0 / 16.0, gamma - 0.5);
}

double direct_bracketing_constant(double gamma) {
  if (!(gamma >= 0.5) || !std::isfinite(gamma))
    throw precondition_error("direct_bracketing_constant: gamma must be >= 1/2");
  return std::pow(varsigma3(), 2.0 * gamma) / std::pow(3.0, gamma + 0.5);
}

double theta_weight(const ThetaParams& params, ThetaMode mode) {
  const double eta = params.eta;
  if (!(eta > 0.0 && eta < 1.0)) throw precondition_error("theta_weight: eta must lie in (0, 1)");
  if (!(params.p0 > 0.0 && params.p1 > 0.0) || params.p0 == params.p1)
    throw precondition_error("theta_weight: need p0, p1 > 0 and p0 != p1");
  if (mode == ThetaMode::numeric) return theta_numeric(eta, params.p0, params.p1);
  if (params.p0 == 1.0 && params.p1 == 2.0) return std::pow(2.0, eta) / (eta * (1.0 - eta) * (1.0 + eta));
  if (params.p0 == 0.5 && params.p1 == 1.5) return theta_half_closed(eta);
  throw precondition_error("theta_weight: closed form only for (p0, p1) = (1, 2) or (1/2, 3/2)");
}

MFactor m_factor(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw precondition_error("m_factor: eta must lie in (0, 1)");
  auto objective = [eta](double n) { return std::pow(1.0 + n, 1.0 - eta) * std::pow(1.0 + 1.0 / n, eta); };
  for (int window = 64; window <= (1 << 24); window *= 2) {
    MFactor best{objective(1.0), 1, 1};
    for (int k = 2; k <= window; ++k) {
      const double up = objective(k), down = objective(1.0 / k);
      if (up < best.value) best = {up, k, 1};
      if (down < best.value) best = {down, 1, k};
    }
    if (best.num < window && best.den < window) return best;
  }
  throw numerical_error("m_factor: minimum keeps moving to the search window boundary");
}

double doublestar_constant(double gamma) {
  require_gamma(gamma, 0.5, 1.5, true, "doublestar_constant");
  const double eta = gamma - 0.5;
  const double ratio = theta_weight({eta, 1.0, 2.0}) / theta_weight({eta, 0.5, 1.5});
  const double c = ratio * m_factor(eta).value / std::sqrt(std::pow(eta, eta) * std::pow(1.0 - eta, 1.0 - eta));
  return c * std::pow(varsigma3() / 3.0, 1.0 - eta) * std::pow(3.0 / 16.0, eta);
}

double crossover(const Tolerance& tol) {
  tol.validate();
  auto diff = [](double g) { return doublestar_constant(g) - star_constant(g); };
  double lo = 1.0, hi = 1.3;
  double flo = diff(lo);
  if ((flo > 0) == (diff(hi) > 0)) throw numerical_error("crossover: no sign change on (1, 1.3)");
  for (int it = 0; it < tol.max_iter && hi - lo > tol.abs; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = diff(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DensityConstants density_constants(std::optional<double> l_half, std::optional<double> l_one) {
  const double lh = l_half.value_or(varsigma3() / 3.0);
  const double lo = l_one.value_or(star_constant(1.0));
  if (!(lh > 0.0) || !(lo > 0.0)) throw precondition_error("density_constants: inputs must be positive");
  return {4.0 / (27.0 * lo * lo), 1.0 / (2.0 * lh)};
}

std::optional<double> ConstantsRow::best() const {
  std::optional<double> out = l_star;
  if (l_dstar) out = out ? std::min(*out, *l_dstar) : *l_dstar;
  return out;
}

ConstantsRow constants_row(double gamma) {
  require_gamma(gamma, 0.5, 1.5, false, "constants_row");
  ConstantsRow row;
  row.gamma = gamma;
  row.eta = gamma - 0.5;
  row.l_cl = classical_constant(gamma);
  row.l_one = one_state_constant(gamma);
  row.l_star = star_constant(gamma);
  if (gamma > 0.5 && gamma < 1.5) {
    row.l_lt = lt_constant(gamma);
    row.l_ggm = ggm_constant(gamma);
    row.l_char = char_interp_constant(gamma);
    row.l_dstar = doublestar_constant(gamma);
  }
  return row;
}

std::string constants_csv(const std::vector<ConstantsRow>& rows, bool with_best) {
  std::ostringstream out;
  out << "gamma,L_cl,L_LT,L_GGM,L_one,L_star,L_char,L_dstar" << (with_best ? ",L_best" : "") << '\n';
  auto cell = [&](const std::optional<double>& v) {
    out << ',';
    if (v) out << format_number(*v);
  };
  for (const auto& r : rows) {
    out << format_number(r.gamma);
    for (const auto* v : {&r.l_cl, &r.l_lt, &r.l_ggm, &r.l_one, &r.l_star, &r.l_char, &r.l_dstar}) cell(*v);
    if (with_best) cell(r.best());
    out << '\n';
  }
  return out.str();
}

}  // namespace lt
