#include "lt/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

namespace lt {

namespace {

constexpr int kBaseLevel = 8;
constexpr int kTopLevel = 16;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNoiseFactor = 16.0;

// 3-point Gauss-Legendre on [-1, 1]
constexpr double kGaussX = 0.7745966692414833770358531;
constexpr double kGaussW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct MeshPlan {
  std::vector<double> cuts;
  std::vector<long> counts;  // elements per segment at kBaseLevel
};

MeshPlan plan_mesh(const Potential& v, double a, double b) {
  MeshPlan plan;
  auto& cuts = plan.cuts;
  cuts = {a, b};
  auto add = [&](double x) {
    if (std::isfinite(x) && x > a && x < b) cuts.push_back(x);
  };
  for (double k : v.kinks()) add(k);
  const Interval sup = v.support();
  Interval core = v.core();
  if (!sup.empty() && !core.empty()) {
    core = {std::max({core.lo, sup.lo, a}), std::min({core.hi, sup.hi, b})};
  }
  const bool has_core = !core.empty();
  if (has_core) {
    add(core.lo);
    add(core.hi);
    // geometric grading away from the bulk of V
    for (double step = 1.0; core.hi + step < b; step *= 2.0) add(core.hi + step);
    for (double step = 1.0; core.lo - step > a; step *= 2.0) add(core.lo - step);
  }
  sort_unique(cuts);

  // Element length c * max(ell, d) at distance d from the core, ell the
  // length scale of V: bound states decay like exp(-sqrt|E| d) with
  // sqrt|E| <= 1 / ell, so this keeps a fixed relative resolution for
  // every decay rate.
  const double depth = std::max(std::fabs(v.sup()), std::fabs(v.inf()));
  const double ell = depth > 0.0 ? std::min(1.0 / std::sqrt(depth), b - a) : b - a;
  const std::size_t nseg = cuts.size() - 1;
  std::vector<double> weight(nseg);
  double total = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    const double x0 = cuts[i], x1 = cuts[i + 1];
    double d = 0.0;
    if (has_core && x0 >= core.hi) d = x0 - core.hi;
    else if (has_core && x1 <= core.lo) d = core.lo - x1;
    weight[i] = (x1 - x0) / std::max(ell, d);
    total += weight[i];
  }
  const double base = static_cast<double>(1L << kBaseLevel);
  for (std::size_t i = 0; i < nseg; ++i) plan.counts.push_back(std::max(1L, std::lround(base * weight[i] / total)));
  return plan;
}

struct Level {
  std::vector<double> values;
  double noise = 0.0;
};

Level eigen_level(const Potential& v, double a, double b, EndCondition left, EndCondition right,
                  int level) {
  const auto nodes = build_mesh(v, a, b, level);
  FiniteElementPencil pencil(v, nodes, left, right);
  Level out;
  out.noise = pencil.noise_floor();
  out.values = pencil.eigenvalues_below(-out.noise);
  return out;
}

struct Estimate {
  double value, radius;
};

// Romberg table over four consecutive levels for the error expansion
// c1 h^2 + c2 h^4 + ... The value is the second-pass extrapolant on the
// finest levels and the radius its change from the previous one, plus the
// rounding floor times the extrapolation weights (less than 3).
std::vector<Estimate> extrapolate(std::span<const Level> levels) {
  std::vector<Estimate> out;
  const Level& fine = levels.back();
  const double floor = 3.0 * fine.noise;
  for (std::size_t i = 0; i < fine.values.size(); ++i) {
    if (i >= levels.front().values.size()) {
      out.push_back({fine.values[i], std::fabs(fine.values[i]) + floor});
      continue;
    }
    double r1[3], r2[2];
    for (int j = 0; j < 3; ++j) r1[j] = levels[j + 1].values[i] + (levels[j + 1].values[i] - levels[j].values[i]) / 3.0;
    for (int j = 0; j < 2; ++j) r2[j] = r1[j + 1] + (r1[j + 1] - r1[j]) / 15.0;
    out.push_back({r2[1], std::fabs(r2[1] - r2[0]) + floor});
  }
  return out;
}

Spectrum to_spectrum(const std::vector<Estimate>& est, const Tolerance& tol, Boundary tag) {
  Spectrum s;
  s.boundary = tag;
  for (const auto& e : est) {
    if (std::fabs(e.value) <= 10.0 * tol.abs || e.radius >= std::fabs(e.value)) {
      s.threshold.push_back(std::min(e.value - e.radius, 0.0));
    } else {
      s.eigenvalues.push_back(e.value);
      s.radii.push_back(e.radius);
    }
  }
  return s;
}

Boundary tag_for(EndCondition left, EndCondition right) {
  return (left == EndCondition::dirichlet && right == EndCondition::dirichlet) ? Boundary::dirichlet
                                                                               : Boundary::neumann;
}

}  // namespace

std::vector<double> build_mesh(const Potential& v, double a, double b, int level) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw precondition_error("build_mesh: need a finite interval a < b");
  const MeshPlan plan = plan_mesh(v, a, b);
  std::vector<double> nodes{a};
  for (std::size_t i = 0; i < plan.counts.size(); ++i) {
    long n = plan.counts[i];
    if (level >= kBaseLevel) n <<= (level - kBaseLevel);
    else n = std::max(1L, n >> (kBaseLevel - level));
    const double x0 = plan.cuts[i], x1 = plan.cuts[i + 1];
    for (long j = 1; j < n; ++j) nodes.push_back(x0 + (x1 - x0) * static_cast<double>(j) / static_cast<double>(n));
    nodes.push_back(x1);
  }
  return nodes;
}

FiniteElementPencil::FiniteElementPencil(const Potential& v, std::span<const double> nodes,
                                         EndCondition left, EndCondition right) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (n < 3) throw precondition_error("FiniteElementPencil: need at least 3 nodes");
  // Stiffness 1/h is kept apart from the O(h) potential and mass parts so
  // the pivot recurrence never subtracts two O(1/h) numbers.
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n - 1), pd = Eigen::VectorXd::Zero(n), po = Eigen::VectorXd::Zero(n - 1);
  Eigen::VectorXd bd = Eigen::VectorXd::Zero(n), bo = Eigen::VectorXd::Zero(n - 1);
  for (Eigen::Index e = 0; e + 1 < n; ++e) {
    const double x0 = nodes[e], x1 = nodes[e + 1];
    h[e] = x1 - x0;
    if (!(h[e] > 0)) throw precondition_error("FiniteElementPencil: nodes must increase");
    double p00 = 0.0, p01 = 0.0, p11 = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double s = (q - 1) * kGaussX;  // -x, 0, +x
      const double x = 0.5 * (x0 + x1) + 0.5 * h[e] * s;
      const double w = 0.5 * h[e] * kGaussW[q] * v(x);
      const double phi0 = 0.5 * (1.0 - s), phi1 = 0.5 * (1.0 + s);
      p00 += w * phi0 * phi0;
      p01 += w * phi0 * phi1;
      p11 += w * phi1 * phi1;
    }
    pd[e] -= p00;
    pd[e + 1] -= p11;
    po[e] = -p01;
    bd[e] += h[e] / 3.0;
    bd[e + 1] += h[e] / 3.0;
    bo[e] = h[e] / 6.0;
  }
  const Eigen::Index first = (left == EndCondition::dirichlet) ? 1 : 0;
  const Eigen::Index last = (right == EndCondition::dirichlet) ? n - 2 : n - 1;
  const Eigen::Index m = last - first + 1;
  if (m < 1) throw precondition_error("FiniteElementPencil: no free nodes");
  p_diag_ = pd.segment(first, m);
  b_diag_ = bd.segment(first, m);
  const Eigen::Index edges = std::max<Eigen::Index>(m - 1, 0);
  h_ = h.segment(first, edges);
  p_off_ = po.segment(first, edges);
  b_off_ = bo.segment(first, edges);
  k_first_ = first > 0 ? 1.0 / h[0] : 0.0;
  k_last_ = last < n - 1 ? 1.0 / h[n - 2] : 0.0;
  noise_floor_ = kNoiseFactor * kEps * (2.0 * std::max(std::fabs(v.sup()), std::fabs(v.inf())) + 1.0) *
                 std::sqrt(static_cast<double>(m));
  lower_bound_ = -v.sup() * (1.0 + 1e-9) - 1e-9 - noise_floor_;
}

int FiniteElementPencil::count_below(double e) const {
  const Eigen::Index n = p_diag_.size();
  constexpr double pivmin = std::numeric_limits<double>::min() * 1e4;
  // q_i = k_i + s_i with k_i the stiffness of the element to the right of
  // node i; the recurrence runs on the small part s_i.
  auto right_k = [&](Eigen::Index i) { return i + 1 < n ? 1.0 / h_[i] : k_last_; };
  int count = 0;
  double s = k_first_ + p_diag_[0] - e * b_diag_[0];
  for (Eigen::Index i = 0;; ++i) {
    const double k = right_k(i);
    double q = k + s;
    if (std::fabs(q) < pivmin) {
      q = -pivmin;
      s = q - k;
    }
    if (q < 0) ++count;
    if (i + 1 == n) break;
    const double hi = h_[i];
    const double w = p_off_[i] - e * b_off_[i];
    double den = 1.0 + s * hi;
    if (std::fabs(den) < pivmin) den = -pivmin;
    s = p_diag_[i + 1] - e * b_diag_[i + 1] + (s + 2.0 * w - w * w * hi) / den;
  }
  return count;
}

std::vector<double> FiniteElementPencil::eigenvalues_below(double ceiling) const {
  const int n = count_below(ceiling);
  if (n == 0) return {};
  double floor = lower_bound_;
  while (count_below(floor) > 0) floor = 2.0 * floor - 1.0;
  std::vector<double> lo(static_cast<std::size_t>(n), floor), hi(static_cast<std::size_t>(n), ceiling);
  const double abs_res = 1e-3 * noise_floor_;
  for (int i = 0; i < n; ++i) {
    auto& l = lo[static_cast<std::size_t>(i)];
    auto& h = hi[static_cast<std::size_t>(i)];
    for (int it = 0; it < 200; ++it) {
      if (h - l <= 4.0 * kEps * std::max(std::fabs(l), std::fabs(h)) + abs_res) break;
      const double mid = 0.5 * (l + h);
      const int c = count_below(mid);
      // every later eigenvalue shares the information
      for (int j = i; j < n; ++j) {
        auto ju = static_cast<std::size_t>(j);
        if (j < c) hi[ju] = std::min(hi[ju], mid);
        else lo[ju] = std::max(lo[ju], mid);
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (lo[i] + hi[i]);
  return out;
}

Spectrum solve_interval(const Potential& v, double a, double b, EndCondition bc, const Tolerance& tol) {
  return solve_interval(v, a, b, bc, bc, tol);
}

Spectrum solve_interval(const Potential& v, double a, double b, EndCondition left, EndCondition right,
                        const Tolerance& tol) {
  tol.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw precondition_error("solve_interval: need a finite interval a < b");
  const Boundary tag = tag_for(left, right);
  const Interval s = v.support();
  if (s.empty() || s.hi <= a || s.lo >= b || v.sup() <= 0.0) {
    Spectrum empty;
    empty.boundary = tag;
    return empty;
  }
  std::vector<Level> levels;
  for (int level = kBaseLevel; level <= kTopLevel; ++level) {
    levels.push_back(eigen_level(v, a, b, left, right, level));
    if (levels.size() < 4) continue;
    const auto est = extrapolate(std::span<const Level>(levels).last(4));
    const bool done = std::all_of(est.begin(), est.end(), [&](const Estimate& e) {
      if (std::fabs(e.value) <= 10.0 * tol.abs) return true;
      return e.radius <= std::max(tol.abs, tol.rel * std::fabs(e.value));
    });
    if (done) return to_spectrum(est, tol, tag);
  }
  throw numerical_error("solve_interval: grid budget exhausted before tolerance met");
}

namespace {

double abs_mass(const Potential& v, const SignSplit* split, double from, double to) {
  if (!(from < to)) return 0.0;
  if (!split) return integrate(v, from, to);
  return integrate(split->plus, from, to) + integrate(split->minus, from, to);
}

// Merged view of one truncation: certified states followed by threshold states.
struct States {
  std::vector<double> lower;  // value - radius
  std::vector<double> upper;  // value + radius
  std::size_t certified = 0;
};

States states_of(const Spectrum& s) {
  States out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.lower.push_back(s.eigenvalues[i] - s.radii[i]);
    out.upper.push_back(s.eigenvalues[i] + s.radii[i]);
  }
  out.certified = s.size();
  for (double t : s.threshold) {
    out.lower.push_back(t);
    out.upper.push_back(0.0);
  }
  return out;
}

}  // namespace

Spectrum solve_line(const Potential& v, const Tolerance& tol) {
  tol.validate();
  const Domain& dom = v.domain();
  if (dom.kind() == Domain::Kind::interval)
    return solve_interval(v, dom.lower(), dom.upper(), EndCondition::neumann, tol);
  const bool half = dom.kind() == Domain::Kind::half_line;
  Spectrum result;
  result.boundary = half ? Boundary::half_line_neumann : Boundary::whole_line;

  Interval s = v.support();
  if (half) s.lo = std::max(s.lo, 0.0);
  if (s.empty() || v.sup() <= 0.0) return result;

  std::optional<SignSplit> split;
  if (v.inf() < 0.0) split = sign_split(v);
  const SignSplit* sp = split ? &*split : nullptr;

  // Truncate where the discarded tail mass is negligible.
  const double tail_budget = 1e-2 * tol.abs;
  double lo = s.lo, hi = s.hi;
  const Interval c = v.core();
  if (!std::isfinite(hi)) {
    hi = std::max(c.hi, lo + 1.0);
    double step = std::max(1.0, c.length() / 4.0);
    while (abs_mass(v, sp, hi, kInf) > 0.5 * tail_budget) {
      hi += step;
      step *= 2.0;
    }
  }
  if (!std::isfinite(lo)) {
    lo = std::min(c.lo, hi - 1.0);
    double step = std::max(1.0, c.length() / 4.0);
    while (abs_mass(v, sp, -kInf, lo) > 0.5 * tail_budget) {
      lo -= step;
      step *= 2.0;
    }
  }
  if (half) lo = 0.0;

  const double margin_cap = std::clamp(10.0 / std::sqrt(100.0 * tol.abs), 100.0, 2e4);
  double margin = 2.0;
  std::vector<Estimate> paired;
  std::vector<double> candidates;
  for (int iter = 0; iter < 32; ++iter) {
    const double a = half ? 0.0 : lo - margin;
    const double b = hi + margin;
    const Spectrum neu = solve_interval(v, a, b, EndCondition::neumann, EndCondition::neumann, tol);
    const Spectrum dir = solve_interval(v, a, b, half ? EndCondition::neumann : EndCondition::dirichlet,
                                        EndCondition::dirichlet, tol);
    const States n = states_of(neu), d = states_of(dir);
    paired.clear();
    candidates.clear();
    bool closed = true;
    for (std::size_t i = 0; i < n.lower.size(); ++i) {
      if (i < d.certified) {
        const double l = n.lower[i], u = d.upper[i];
        const Estimate e{0.5 * (l + u), 0.5 * (u - l)};
        paired.push_back(e);
        if (e.radius > std::max(tol.abs, tol.rel * std::fabs(e.value))) closed = false;
      } else {
        candidates.push_back(n.lower[i]);
        if (std::fabs(n.lower[i]) > 100.0 * tol.abs) closed = false;
      }
    }
    if (closed || margin >= margin_cap) break;
    // eigenfunctions decay like exp(-sqrt|E| x)
    double reach = 2.0 * margin;
    double probe = 0.0;
    for (const auto& e : paired) probe = (probe == 0.0) ? e.value : std::max(probe, e.value);
    for (double cnd : candidates)
      if (std::fabs(cnd) > 100.0 * tol.abs) probe = (probe == 0.0) ? cnd : std::max(probe, cnd);
    if (probe < 0.0) reach = std::max(reach, 10.0 / std::sqrt(-probe));
    margin = std::min(margin_cap, reach);
  }

  for (const auto& e : paired) {
    if (std::fabs(e.value) <= 10.0 * tol.abs || e.radius >= std::fabs(e.value)) {
      result.threshold.push_back(std::min(e.value - e.radius, 0.0));
    } else {
      result.eigenvalues.push_back(e.value);
      result.radii.push_back(e.radius);
    }
  }
  for (double cnd : candidates) result.threshold.push_back(cnd);
  return result;
}

RieszMean riesz_mean(const Spectrum& spec, double gamma) {
  if (!(gamma >= 0.5)) throw precondition_error("riesz_mean: gamma must be >= 1/2");
  RieszMean out;
  out.gamma = gamma;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double e = std::fabs(spec.eigenvalues[i]), r = spec.radii[i];
    const double mid = std::pow(e, gamma);
    out.value += mid;
    // exact spread of |E|^gamma over [|E| - r, |E| + r]
    out.error += std::max(std::pow(e + r, gamma) - mid, mid - std::pow(std::max(e - r, 0.0), gamma));
  }
  for (double t : spec.threshold) out.error += std::pow(std::fabs(t), gamma);
  return out;
}

double bs_interval_bound(const Potential& v, double a, double b, double energy) {
  if (!(energy < 0)) throw precondition_error("bs_interval_bound: energy must be negative");
  if (!(a < b)) throw precondition_error("bs_interval_bound: need a < b");
  const double lambda = std::sqrt(-energy), l = b - a;
  const double mass = integrate(v, a, b);
  const double coth = 1.0 / std::tanh(lambda * l);
  return coth * coth / (lambda * lambda) * mass * mass;
}

double bs_line_ground_bound(const Potential& v) { return 0.5 * integrate(v); }

SobolevCheck sobolev_pointwise_check(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() < 3 || grid.size() != values.size())
    throw precondition_error("sobolev_pointwise_check: need >= 3 matching grid points");
  const double l = grid.back() - grid.front();
  if (!(l > 0)) throw precondition_error("sobolev_pointwise_check: empty interval");
  double mean = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = grid[i + 1] - grid[i];
    if (!(h > 0)) throw precondition_error("sobolev_pointwise_check: grid must increase");
    mean += 0.5 * h * (values[i] + values[i + 1]);
  }
  mean /= l;
  double sup = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = values[i] - mean;
    sup = std::max(sup, u * u);
    if (i + 1 < grid.size()) {
      const double du = values[i + 1] - values[i];
      energy += du * du / (grid[i + 1] - grid[i]);
    }
  }
  return {sup, l / 3.0 * energy};
}

}  // namespace lt
