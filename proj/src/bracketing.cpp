#include "lt/bracketing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lt/constants.hpp"
#include "lt/io.hpp"

namespace lt {

namespace {

struct Bounded {
  double value;
  double error;
};

// sqrt|E| for E in [e - r, e + r], e < 0
Bounded sqrt_abs(double e, double r) {
  const double mid = std::sqrt(-e);
  const double hi = std::sqrt(-e + r), lo = std::sqrt(std::max(-e - r, 0.0));
  return {mid, std::max(hi - mid, mid - lo)};
}

void require_nonnegative(const Potential& v, const char* who) {
  if (v.inf() < 0.0) throw precondition_error(std::string(who) + ": V must be nonnegative");
}

struct HalfLineBracket {
  Partition partition;
  std::vector<double> lambdas;
  double sum = 0.0;
  double error = 0.0;
};

HalfLineBracket bracket_half_line(const Potential& v, const Tolerance& tol) {
  HalfLineBracket out;
  out.partition = build_partition(v);
  for (std::size_t k = 0; k < out.partition.intervals(); ++k) {
    const auto g = interval_ground_bounds(v, out.partition, k, tol);
    out.lambdas.push_back(g.lambda1);
    out.sum += g.lambda1;
    out.error += g.radius;
  }
  // the discarded tail can hold at most varsigma(3)/3 of its mass
  out.error += varsigma(3.0) / 3.0 * out.partition.tail_mass;
  return out;
}

RieszMean add(const RieszMean& a, const RieszMean& b) { return {a.gamma, a.value + b.value, a.error + b.error}; }

InequalityCheck check(std::string name, double lhs, double rhs, double allowance) {
  return {std::move(name), lhs, rhs, allowance, lhs <= rhs + allowance};
}

}  // namespace

Partition build_partition(const Potential& v, const PartitionOptions& opt) {
  if (v.domain().kind() != Domain::Kind::half_line)
    throw precondition_error("build_partition: V must live on the half-line");
  require_nonnegative(v, "build_partition");
  opt.tol.validate();
  Partition p;
  p.breakpoints.push_back(0.0);
  const double total = integrate(v);
  if (!std::isfinite(total)) throw precondition_error("build_partition: V must be integrable");
  if (total <= 0.0) {
    p.degenerate = true;
    p.infinite_tail = true;
    p.breakpoints.push_back(kInf);
    return p;
  }
  const double c = varsigma(3.0) / 3.0;
  double l = 0.0;
  for (;;) {
    const double remaining = integrate(v, l, kInf);
    if (remaining <= opt.tail_threshold * total) {
      p.infinite_tail = true;
      p.tail_mass = std::max(remaining, 0.0);
      p.breakpoints.push_back(kInf);
      break;
    }
    if (p.intervals() >= opt.max_intervals)
      throw numerical_error("build_partition: interval budget exhausted with tail mass still positive");
    const double base = l;
    auto g = [&](double x) { return (x - base) * integrate(v, base, x) - 3.0; };
    // any interval shorter than 3 / int V has l * mass < 3
    const double lo = base + 3.0 / total;
    double step = std::max(3.0 / total, 1.0);
    double hi = lo + step;
    while (g(hi) < 0.0) {
      step *= 2.0;
      hi = lo + step;
      if (!std::isfinite(hi)) throw numerical_error("build_partition: tail mass below quadrature noise");
    }
    l = (g(lo) >= 0.0) ? lo : find_root(g, lo, hi, opt.tol);
    const double mass = integrate(v, base, l);
    p.breakpoints.push_back(l);
    p.masses.push_back(mass);
    p.lambda_upper.push_back(c * mass);
    p.lambda_lower.push_back(mass / std::sqrt(3.0));
  }
  return p;
}

GroundBounds interval_ground_bounds(const Potential& v, const Partition& p, std::size_t k, const Tolerance& tol) {
  if (k >= p.intervals()) throw precondition_error("interval_ground_bounds: k does not index a finite interval");
  if (!(p.masses[k] > 0.0)) throw precondition_error("interval_ground_bounds: interval carries no mass");
  const double a = p.breakpoints[k], b = p.breakpoints[k + 1];
  const Spectrum s = solve_interval(v, a, b, EndCondition::neumann, tol);
  const std::size_t found = s.size() + s.threshold.size();
  if (found != 1) {
    std::ostringstream msg;
    msg << "interval_ground_bounds: expected exactly one negative Neumann eigenvalue on [" << a << ", " << b
        << "], found " << found;
    throw numerical_error(msg.str());
  }
  GroundBounds g{};
  if (s.size() == 1) {
    const auto r = sqrt_abs(s.eigenvalues[0], s.radii[0]);
    g.lambda1 = r.value;
    g.radius = r.error;
  } else {
    g.lambda1 = 0.5 * std::sqrt(-s.threshold[0]);
    g.radius = g.lambda1;
  }
  g.lower = p.lambda_lower[k];
  g.upper = p.lambda_upper[k];
  return g;
}

bool Theorem1Certificate::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
}

Theorem1Certificate certify_theorem1(const Potential& v, const Tolerance& tol) {
  const auto kind = v.domain().kind();
  if (kind == Domain::Kind::interval)
    throw precondition_error("certify_theorem1: domain must be the line or the half-line");
  require_nonnegative(v, "certify_theorem1");
  Theorem1Certificate c;
  c.domain = kind;
  c.integral_v = integrate(v);
  if (!std::isfinite(c.integral_v)) throw precondition_error("certify_theorem1: V must be integrable");
  c.upper = varsigma(3.0) / 3.0 * c.integral_v;
  c.lower = 0.25 * c.integral_v;
  c.sum_sqrt = riesz_mean(solve_line(v, tol), 0.5);
  for (double g = 0.5; g <= 1.5 + 1e-12; g += 0.25) c.direct_constants.emplace_back(g, direct_bracketing_constant(g));

  const double s = c.sum_sqrt.value, se = c.sum_sqrt.error;
  if (kind == Domain::Kind::half_line) {
    auto right = bracket_half_line(v, tol);
    c.right = std::move(right.partition);
    c.lambda_right = std::move(right.lambdas);
    c.bracket_sum = right.sum;
    c.bracket_error = right.error;
    c.checks.push_back(check("quarter_mass <= sum_sqrt", c.lower, s, se));
    c.checks.push_back(check("sum_sqrt <= bracket_sum", s, c.bracket_sum, se + c.bracket_error));
    c.checks.push_back(check("bracket_sum <= upper", c.bracket_sum, c.upper, c.bracket_error));
    return c;
  }
  const Potential plus = v.on(Domain::half_line());
  const Potential minus = mirrored(v).on(Domain::half_line());
  c.split_sum = add(riesz_mean(solve_line(minus, tol), 0.5), riesz_mean(solve_line(plus, tol), 0.5));
  auto right = bracket_half_line(plus, tol);
  auto left = bracket_half_line(minus, tol);
  c.right = std::move(right.partition);
  c.left = std::move(left.partition);
  c.lambda_right = std::move(right.lambdas);
  c.lambda_left = std::move(left.lambdas);
  c.bracket_sum = right.sum + left.sum;
  c.bracket_error = right.error + left.error;
  const double ss = c.split_sum.value, sse = c.split_sum.error;
  c.checks.push_back(check("quarter_mass <= sum_sqrt", c.lower, s, se));
  c.checks.push_back(check("sum_sqrt <= split_sum", s, ss, se + sse));
  c.checks.push_back(check("split_sum <= bracket_sum", ss, c.bracket_sum, sse + c.bracket_error));
  c.checks.push_back(check("bracket_sum <= upper", c.bracket_sum, c.upper, c.bracket_error));
  return c;
}

nlohmann::json partition_json(const Partition& p) {
  nlohmann::json out;
  out["breakpoints"] = nlohmann::json::array();
  for (double b : p.breakpoints) out["breakpoints"].push_back(json_number(b));
  out["masses"] = nlohmann::json::array();
  for (double m : p.masses) out["masses"].push_back(json_number(m));
  out["lambda_lower"] = nlohmann::json::array();
  for (double m : p.lambda_lower) out["lambda_lower"].push_back(json_number(m));
  out["lambda_upper"] = nlohmann::json::array();
  for (double m : p.lambda_upper) out["lambda_upper"].push_back(json_number(m));
  out["infinite_tail"] = p.infinite_tail;
  out["tail_mass"] = json_number(p.tail_mass);
  out["degenerate"] = p.degenerate;
  return out;
}

nlohmann::json certificate_json(const Theorem1Certificate& c) {
  using nlohmann::json;
  json out;
  out["domain"] = c.domain == Domain::Kind::half_line ? "half_line" : "full_line";
  out["integral_V"] = json_number(c.integral_v);
  out["sum_sqrt"] = json_number(c.sum_sqrt.value);
  out["sum_sqrt_error"] = json_number(c.sum_sqrt.error);
  if (c.domain == Domain::Kind::full_line) {
    out["split_sum"] = json_number(c.split_sum.value);
    out["split_sum_error"] = json_number(c.split_sum.error);
  }
  out["bracket_sum"] = json_number(c.bracket_sum);
  out["bracket_error"] = json_number(c.bracket_error);
  out["upper"] = json_number(c.upper);
  out["lower"] = json_number(c.lower);
  out["verdict"] = c.pass() ? "pass" : "fail";
  json checks = json::array();
  for (const auto& k : c.checks) {
    checks.push_back({{"inequality", k.name},
                      {"lhs", json_number(k.lhs)},
                      {"rhs", json_number(k.rhs)},
                      {"margin", json_number(k.rhs - k.lhs)},
                      {"allowance", json_number(k.allowance)},
                      {"pass", k.pass}});
  }
  out["checks"] = checks;
  // breakpoints in the original coordinate; the left half is mirrored back
  json bps = json::array();
  if (c.domain == Domain::Kind::full_line) {
    for (auto it = c.left.breakpoints.rbegin(); it != c.left.breakpoints.rend(); ++it)
      if (*it != 0.0) bps.push_back(json_number(-*it));
  }
  for (double b : c.right.breakpoints) bps.push_back(json_number(b));
  out["partition"] = bps;
  json lambdas = json::array();
  for (auto it = c.lambda_left.rbegin(); it != c.lambda_left.rend(); ++it) lambdas.push_back(json_number(*it));
  for (double l : c.lambda_right) lambdas.push_back(json_number(l));
  out["lambda1"] = lambdas;
  out["right"] = partition_json(c.right);
  if (c.domain == Domain::Kind::full_line) out["left"] = partition_json(c.left);
  json direct = json::array();
  for (const auto& [g, k] : c.direct_constants) direct.push_back({{"gamma", json_number(g)}, {"constant", json_number(k)}});
  out["direct_bracketing_constant"] = direct;
  return out;
}

}  // namespace lt
