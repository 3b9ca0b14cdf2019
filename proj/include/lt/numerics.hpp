#ifndef LT_NUMERICS_HPP
#define LT_NUMERICS_HPP

// Scalar kernels shared by every other module: bracketed root finding,
// Brent minimization, double-exponential and adaptive Gauss-Kronrod
// quadrature, and the gamma function.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lt/errors.hpp"

namespace lt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
  int max_iter = 200;

  // Throws precondition_error unless abs, rel in (0,1) and 0 < max_iter <= 1e6.
  void validate() const;
};

struct Minimum {
  double argmin;
  double value;
};

struct QuadratureResult {
  double value;
  double error;  // estimated absolute error
};

/// Bracketed root of f on [lo, hi] by Brent's method; every iterate stays
/// inside the bracket, so a monotone f always converges.
template <class F>
double find_root(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw numerical_error("find_root: non-finite value at bracket end");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw precondition_error("find_root: bracket does not straddle a sign change");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa, d = b - a, e = d;
  // Each step shrinks the bracket at least as fast as bisection eventually,
  // so the cap is only reached for pathological f.
  const int cap = std::max(tol.max_iter, 2000);
  for (int iter = 0; iter < cap; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol.abs;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (!std::isfinite(fb)) throw numerical_error("find_root: non-finite function value");
  }
  return b;
}

/// Brent's minimizer (golden section with parabolic refinement) on [lo, hi].
template <class F>
Minimum minimize_1d(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (!(lo < hi)) throw precondition_error("minimize_1d: need lo < hi");
  constexpr double golden = 0.3819660112501051;
  const double rel = std::max(tol.rel, std::sqrt(std::numeric_limits<double>::epsilon()));

  double a = lo, b = hi;
  double x = a + golden * (b - a), w = x, v = x;
  double fx = f(x);
  if (!std::isfinite(fx)) throw numerical_error("minimize_1d: non-finite function value");
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < std::max(tol.max_iter, 500); ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = rel * std::fabs(x) + tol.abs / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool golden_step = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::fabs(q);
      const double etemp = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::fabs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    if (!std::isfinite(fu)) throw numerical_error("minimize_1d: non-finite function value");
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

namespace detail {

// Sums one refinement level of a double-exponential rule. `node(t)` returns
// {x, weight, at_endpoint}; terms at endpoints are dropped.
template <class F, class Node>
double de_level_sum(F& f, Node& node, double h, double t_max, bool odd_only) {
  double sum = 0.0;
  const long jmax = static_cast<long>(std::ceil(t_max / h));
  for (long j = -jmax; j <= jmax; ++j) {
    if (odd_only && (j % 2 == 0)) continue;
    const auto [x, w, skip] = node(static_cast<double>(j) * h);
    if (skip || w == 0.0) continue;
    const double fx = f(x);
    if (!std::isfinite(fx)) throw numerical_error("integrate_de: non-finite integrand");
    sum += fx * w;
  }
  return sum;
}

struct DeNode {
  double x;
  double w;
  bool skip;
};

}  // namespace detail

/// Double-exponential quadrature of f over [a, b]; either end may be
/// infinite. Finite ranges use tanh-sinh, half-lines exp-sinh and the whole
/// line sinh-sinh. Integrable endpoint singularities are fine when the
/// singular end is a representable point (put singularities at 0 if the
/// integrand is steep). Throws numerical_error on divergence or when the
/// level ladder is exhausted.
template <class F>
QuadratureResult integrate_de(F&& f, double a, double b, const Tolerance& tol = {},
                              int max_level = 12) {
  tol.validate();
  if (a == b) return {0.0, 0.0};
  if (a > b) {
    auto r = integrate_de(f, b, a, tol, max_level);
    return {-r.value, r.error};
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  const bool fin_a = std::isfinite(a), fin_b = std::isfinite(b);
  double t_max = 6.5;

  auto node = [&](double t) -> detail::DeNode {
    const double u = half_pi * std::sinh(t);
    const double du = half_pi * std::cosh(t);
    if (fin_a && fin_b) {
      const double c = 0.5 * (a + b), d = 0.5 * (b - a);
      if (t == 0.0) return {c, d * du, false};
      // distance from the nearer endpoint, in units of d, without cancellation
      const double delta = std::exp(-std::fabs(u)) / std::cosh(u);
      const double x = (t > 0) ? b - d * delta : a + d * delta;
      const double ch = std::cosh(u);
      const double w = d * du / (ch * ch);
      return {x, w, x <= a || x >= b};
    }
    if (fin_a) {
      const double eu = std::exp(u);
      const double x = a + eu;
      return {x, du * eu, x <= a || !std::isfinite(x)};
    }
    if (fin_b) {
      const double eu = std::exp(u);
      const double x = b - eu;
      return {x, du * eu, x >= b || !std::isfinite(x)};
    }
    return {std::sinh(u), du * std::cosh(u), !std::isfinite(std::sinh(u))};
  };

  // A non-decaying tail term means the transformed integrand is not
  // summable: the integral diverges.
  auto tail_term = [&](double t) {
    const auto n = node(t);
    if (n.skip || n.w == 0.0) return 0.0;
    const double fx = f(n.x);
    return std::isfinite(fx) ? std::fabs(fx * n.w) : kInf;
  };

  double h = 1.0;
  double sum = detail::de_level_sum(f, node, h, t_max, false);
  double estimate = h * sum;
  const double tail = std::max(tail_term(t_max), tail_term(-t_max));
  if (tail > 1e-6 * std::max(1.0, std::fabs(estimate)))
    throw numerical_error("integrate_de: integrand does not decay, integral diverges");

  double prev = estimate;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    sum += detail::de_level_sum(f, node, h, t_max, true);
    estimate = h * sum;
    const double diff = std::fabs(estimate - prev);
    if (level >= 3 && diff <= std::max(tol.abs, tol.rel * std::fabs(estimate)))
      return {estimate, diff};
    prev = estimate;
  }
  throw numerical_error("integrate_de: no convergence within " + std::to_string(max_level) +
                        " levels");
}

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gk15(G& g, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  const double fc = g(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = r * kKronrodNodes[i];
    const double pair = g(c - dx) + g(c + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= r;
  gauss *= r;
  if (!std::isfinite(kronrod)) throw numerical_error("integrate_adaptive: non-finite integrand");
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Infinite ranges are
/// mapped to finite ones through x = t/(1-t^2).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const Tolerance& tol = {},
                                    int max_segments = 4000) {
  tol.validate();
  if (a == b) return {0.0, 0.0};
  if (a > b) {
    auto r = integrate_adaptive(f, b, a, tol, max_segments);
    return {-r.value, r.error};
  }
  const bool fin_a = std::isfinite(a), fin_b = std::isfinite(b);
  auto jac = [](double t) { return (1.0 + t * t) / ((1.0 - t * t) * (1.0 - t * t)); };
  auto g = [&](double t) -> double {
    if (fin_a && fin_b) return f(t);
    const double s = t / (1.0 - t * t);
    if (!fin_a && !fin_b) return f(s) * jac(t);
    if (fin_a) return f(a + s) * jac(t);
    return f(b - s) * jac(t);
  };
  double lo = a, hi = b;
  if (!fin_a && !fin_b) { lo = -1.0; hi = 1.0; }
  else if (!fin_a || !fin_b) { lo = 0.0; hi = 1.0; }

  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(g, lo, hi);
  double total = first.value, error = first.error;
  heap.push(first);
  int segments = 1;
  while (error > std::max(tol.abs, tol.rel * std::fabs(total))) {
    if (segments >= max_segments)
      throw numerical_error("integrate_adaptive: segment budget exhausted");
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15(g, worst.a, mid);
    const auto right = detail::gk15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
    // Segments narrower than rounding cannot be split further.
    if (mid == worst.a || mid == worst.b) break;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err};
}

/// Gamma function for x > 0 (Lanczos, g = 7).
double gamma_fn(double x);

}  // namespace lt

#endif  // LT_NUMERICS_HPP
