#include "lt/kyfan.hpp"

#include <algorithm>
#include <cmath>

#include "lt/constants.hpp"

namespace lt {

namespace {

// Eigenvalues with threshold states appended as their lower bounds.
std::vector<double> worst_case_values(const Spectrum& s) {
  std::vector<double> out = s.eigenvalues;
  out.insert(out.end(), s.threshold.begin(), s.threshold.end());
  std::sort(out.begin(), out.end());
  return out;
}

double at(const std::vector<double>& v, int index) {
  return (index >= 1 && static_cast<std::size_t>(index) <= v.size()) ? v[static_cast<std::size_t>(index) - 1] : 0.0;
}

double radius_at(const Spectrum& s, int index) {
  return (index >= 1 && static_cast<std::size_t>(index) <= s.size()) ? s.radii[static_cast<std::size_t>(index) - 1]
                                                                     : 0.0;
}

// Best available upper bound on L_{p,1}.
double lt_constant_bound(double p) {
  if (p < 0.5) throw precondition_error("verify_splitting: exponents must be >= 1/2 in one dimension");
  if (p == 0.5) return varsigma(3.0) / 3.0;
  if (p >= 1.5) return classical_constant(p);
  return std::min(star_constant(p), doublestar_constant(p));
}

double power_sum(const std::vector<double>& e, double p) {
  double s = 0.0;
  for (double x : e) s += std::pow(std::fabs(x), p);
  return s;
}

}  // namespace

int interleave_s(int k, int n) {
  if (k < 1 || n < 1) throw precondition_error("interleave_s: need k, N >= 1");
  return 1 + k / (n + 1);
}

int interleave_l(int k, int n) {
  if (k < 1 || n < 1) throw precondition_error("interleave_l: need k, N >= 1");
  return n * (k / (n + 1)) + k % (n + 1);
}

InterleavedSequences build_interleaving(const std::vector<double>& spec0, const std::vector<double>& spec1, int n,
                                        int k_max, bool reciprocal) {
  if (k_max < 1) throw precondition_error("build_interleaving: k_max must be >= 1");
  if (n < 1) throw precondition_error("build_interleaving: N must be a positive integer or its reciprocal");
  // N = 1/n: build with the roles of the two operators exchanged
  const auto& first = reciprocal ? spec1 : spec0;
  const auto& second = reciprocal ? spec0 : spec1;
  InterleavedSequences out;
  for (int k = 1; k <= k_max; ++k) {
    const int s = interleave_s(k, n), l = interleave_l(k, n);
    const double x = at(first, s), y = at(second, l);
    if (reciprocal) {
      out.a.push_back(y);
      out.b.push_back(x);
      out.s_index.push_back(l);
      out.l_index.push_back(s);
    } else {
      out.a.push_back(x);
      out.b.push_back(y);
      out.s_index.push_back(s);
      out.l_index.push_back(l);
    }
  }
  return out;
}

InterleavedSequences build_interleaving(const Spectrum& spec0, const Spectrum& spec1, int n, int k_max,
                                        bool reciprocal) {
  return build_interleaving(spec0.eigenvalues, spec1.eigenvalues, n, k_max, reciprocal);
}

Spectrum scaled_kinetic_spectrum(const Potential& w, double c, const Tolerance& tol) {
  if (!(c > 0.0)) throw precondition_error("scaled_kinetic_spectrum: coefficient must be positive");
  Spectrum s = solve_line(multiple(1.0 / c, w), tol);
  for (auto& e : s.eigenvalues) e *= c;
  for (auto& r : s.radii) r *= c;
  for (auto& t : s.threshold) t *= c;
  return s;
}

bool KyFanReport::pass() const {
  return counting_holds && std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

KyFanReport verify_splitting(const Potential& v, const Splitting& split, int k_max, const Tolerance& tol) {
  if (!(split.theta > 0.0 && split.theta < 1.0)) throw precondition_error("verify_splitting: theta must lie in (0, 1)");
  if (split.n < 1) throw precondition_error("verify_splitting: N must be a positive integer or its reciprocal");
  if (k_max < 1) throw precondition_error("verify_splitting: k_max must be >= 1");
  for (const auto* w : {&v, &split.v0, &split.v1})
    if (w->inf() < 0.0) throw precondition_error("verify_splitting: V, V0, V1 must be nonnegative");
  const Interval c = v.core();
  const double lo = std::isfinite(c.lo) ? c.lo : -10.0, hi = std::isfinite(c.hi) ? c.hi : 10.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * i / 200.0;
    const double diff = v(x) - split.v0(x) - split.v1(x);
    if (std::fabs(diff) > 1e-12 * std::max(1.0, std::fabs(v(x))))
      throw precondition_error("verify_splitting: V0 + V1 differs from V");
  }

  const Spectrum h = solve_line(v, tol);
  const Spectrum h0 = scaled_kinetic_spectrum(split.v0, split.theta, tol);
  const Spectrum h1 = scaled_kinetic_spectrum(split.v1, 1.0 - split.theta, tol);

  KyFanReport r;
  r.seq = build_interleaving(h0, h1, split.n, k_max, split.reciprocal);
  const auto eh = worst_case_values(h);
  for (int k = 1; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const double e = at(eh, k);
    const double allowance = radius_at(h, k) + radius_at(h0, r.seq.s_index[i]) + radius_at(h1, r.seq.l_index[i]);
    r.e.push_back(e);
    r.allowance.push_back(allowance);
    // E_{m+n-1}(H) >= E_n(H0) + E_m(H1), stated for magnitudes
    r.holds.push_back(std::fabs(e) <= std::fabs(r.seq.a[i]) + std::fabs(r.seq.b[i]) + allowance);
  }
  const double big_n = split.big_n();
  r.sum_a = power_sum(r.seq.a, split.p0);
  r.sum_b = power_sum(r.seq.b, split.p1);
  r.count_a = (1.0 + big_n) * power_sum(h0.eigenvalues, split.p0);
  r.count_b = (1.0 + 1.0 / big_n) * power_sum(h1.eigenvalues, split.p1);
  r.lt_a = (1.0 + big_n) / std::sqrt(split.theta) * lt_constant_bound(split.p0) *
           lp_integral(split.v0, split.p0 + 0.5);
  r.lt_b = (1.0 + 1.0 / big_n) / std::sqrt(1.0 - split.theta) * lt_constant_bound(split.p1) *
           lp_integral(split.v1, split.p1 + 0.5);
  const double slack = 1e-9 * (1.0 + r.count_a + r.count_b);
  r.counting_holds = r.sum_a <= r.count_a + slack && r.sum_b <= r.count_b + slack && r.count_a <= r.lt_a + slack &&
                     r.count_b <= r.lt_b + slack;
  return r;
}

}  // namespace lt
