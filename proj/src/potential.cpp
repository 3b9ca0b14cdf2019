#include "lt/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "potential_node.hpp"

namespace lt {

using detail::make_node;
using detail::Node;
using detail::NodePtr;
using detail::overloaded;

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw precondition_error("Domain::interval: need a < b");
  return Domain(a, b);
}

Domain::Kind Domain::kind() const {
  if (lo_ == -kInf && hi_ == kInf) return Kind::full_line;
  if (lo_ == 0.0 && hi_ == kInf) return Kind::half_line;
  return Kind::interval;
}

namespace {

// ---------------------------------------------------------------------------
// pointwise values

double sech2(double z) {
  const double e = std::exp(-2.0 * std::fabs(z));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

double value(const Node& n, double x);

double sampled_value(const detail::Sampled& s, double x) {
  const auto& g = s.grid;
  if (x < g.front() || x > g.back()) return 0.0;
  auto it = std::upper_bound(g.begin(), g.end(), x);
  if (it == g.end()) return s.values.back();
  const auto i = static_cast<std::size_t>(it - g.begin());
  const double t = (x - g[i - 1]) / (g[i] - g[i - 1]);
  return (1.0 - t) * s.values[i - 1] + t * s.values[i];
}

double piecewise_value(const detail::PiecewiseConstant& p, double x) {
  const auto& b = p.breakpoints;
  if (x < b.front() || x >= b.back()) return 0.0;
  auto it = std::upper_bound(b.begin(), b.end(), x);
  return p.values[static_cast<std::size_t>(it - b.begin()) - 1];
}

double value(const Node& n, double x) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return 0.0; },
          [x](const detail::SquareWell& w) { return (x >= w.left && x <= w.right) ? w.depth : 0.0; },
          [x](const detail::PoschlTeller& p) {
            return p.order * (p.order + 1.0) * p.scale * p.scale * sech2(p.scale * (x - p.center));
          },
          [x](const detail::Gaussian& g) {
            const double z = (x - g.center) / g.width;
            return g.amplitude * std::exp(-z * z);
          },
          [x](const detail::PiecewiseConstant& p) { return piecewise_value(p, x); },
          [x](const detail::Sampled& s) { return sampled_value(s, x); },
          [x](const detail::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += value(*t, x);
            return acc;
          },
          [x](const detail::Scaled& s) { return s.alpha * s.alpha * value(*s.inner, s.alpha * x); },
          [x](const detail::Multiple& m) { return m.factor * value(*m.inner, x); },
          [x](const detail::Even& e) { return value(*e.inner, std::fabs(x)); },
          [x](const detail::Mirror& m) { return value(*m.inner, -x); },
          [x](const detail::Clip& c) {
            const double v = value(*c.inner, x);
            return std::max(0.0, c.positive ? v : -v);
          },
      },
      n.kind);
}

// ---------------------------------------------------------------------------
// structure

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<double> kinks(const Node& n) {
  std::vector<double> out = std::visit(
      overloaded{
          [](const detail::Zero&) { return std::vector<double>{}; },
          [](const detail::SquareWell& w) { return std::vector<double>{w.left, w.right}; },
          [](const detail::PoschlTeller&) { return std::vector<double>{}; },
          [](const detail::Gaussian&) { return std::vector<double>{}; },
          [](const detail::PiecewiseConstant& p) { return p.breakpoints; },
          [](const detail::Sampled& s) { return s.grid; },
          [](const detail::Sum& s) {
            std::vector<double> all;
            for (const auto& t : s.terms) {
              auto k = kinks(*t);
              all.insert(all.end(), k.begin(), k.end());
            }
            return all;
          },
          [](const detail::Scaled& s) {
            auto k = kinks(*s.inner);
            for (auto& x : k) x /= s.alpha;
            return k;
          },
          [](const detail::Multiple& m) { return kinks(*m.inner); },
          [](const detail::Even& e) {
            std::vector<double> out{0.0};
            for (double x : kinks(*e.inner)) {
              if (x > 0) {
                out.push_back(x);
                out.push_back(-x);
              }
            }
            return out;
          },
          [](const detail::Mirror& m) {
            auto k = kinks(*m.inner);
            for (auto& x : k) x = -x;
            return k;
          },
          [](const detail::Clip& c) { return kinks(*c.inner); },
      },
      n.kind);
  sort_unique(out);
  return out;
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval support(const Node& n) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return Interval{}; },
          [](const detail::SquareWell& w) { return Interval{w.left, w.right}; },
          [](const detail::PoschlTeller&) { return Interval{-kInf, kInf}; },
          [](const detail::Gaussian& g) {
            return g.amplitude == 0.0 ? Interval{} : Interval{-kInf, kInf};
          },
          [](const detail::PiecewiseConstant& p) {
            return Interval{p.breakpoints.front(), p.breakpoints.back()};
          },
          [](const detail::Sampled& s) { return Interval{s.grid.front(), s.grid.back()}; },
          [](const detail::Sum& s) {
            Interval acc{};
            for (const auto& t : s.terms) acc = hull(acc, support(*t));
            return acc;
          },
          [](const detail::Scaled& s) {
            const auto in = support(*s.inner);
            return in.empty() ? in : Interval{in.lo / s.alpha, in.hi / s.alpha};
          },
          [](const detail::Multiple& m) {
            return m.factor == 0.0 ? Interval{} : support(*m.inner);
          },
          [](const detail::Even& e) {
            const auto in = support(*e.inner);
            const double hi = in.hi;
            if (in.empty() || hi <= 0.0) return Interval{};
            return Interval{-hi, hi};
          },
          [](const detail::Mirror& m) {
            const auto in = support(*m.inner);
            return in.empty() ? in : Interval{-in.hi, -in.lo};
          },
          [](const detail::Clip& c) { return support(*c.inner); },
      },
      n.kind);
}

Interval core(const Node& n) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return Interval{}; },
          [](const detail::SquareWell& w) { return Interval{w.left, w.right}; },
          // sech^2 beyond 20/scale carries a relative mass below 1e-17
          [](const detail::PoschlTeller& p) {
            return Interval{p.center - 20.0 / p.scale, p.center + 20.0 / p.scale};
          },
          [](const detail::Gaussian& g) {
            if (g.amplitude == 0.0) return Interval{};
            return Interval{g.center - 6.5 * g.width, g.center + 6.5 * g.width};
          },
          [](const detail::PiecewiseConstant& p) {
            return Interval{p.breakpoints.front(), p.breakpoints.back()};
          },
          [](const detail::Sampled& s) { return Interval{s.grid.front(), s.grid.back()}; },
          [](const detail::Sum& s) {
            Interval acc{};
            for (const auto& t : s.terms) acc = hull(acc, core(*t));
            return acc;
          },
          [](const detail::Scaled& s) {
            const auto in = core(*s.inner);
            return in.empty() ? in : Interval{in.lo / s.alpha, in.hi / s.alpha};
          },
          [](const detail::Multiple& m) { return m.factor == 0.0 ? Interval{} : core(*m.inner); },
          [](const detail::Even& e) {
            const auto in = core(*e.inner);
            if (in.empty() || in.hi <= 0.0) return Interval{};
            return Interval{-in.hi, in.hi};
          },
          [](const detail::Mirror& m) {
            const auto in = core(*m.inner);
            return in.empty() ? in : Interval{-in.hi, -in.lo};
          },
          [](const detail::Clip& c) { return core(*c.inner); },
      },
      n.kind);
}

double sup_of(const Node& n);
double inf_of(const Node& n);

double sup_of(const Node& n) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return 0.0; },
          [](const detail::SquareWell& w) { return std::max(0.0, w.depth); },
          [](const detail::PoschlTeller& p) { return p.order * (p.order + 1.0) * p.scale * p.scale; },
          [](const detail::Gaussian& g) { return std::max(0.0, g.amplitude); },
          [](const detail::PiecewiseConstant& p) {
            return std::max(0.0, *std::max_element(p.values.begin(), p.values.end()));
          },
          [](const detail::Sampled& s) {
            return std::max(0.0, *std::max_element(s.values.begin(), s.values.end()));
          },
          [](const detail::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += sup_of(*t);
            return acc;
          },
          [](const detail::Scaled& s) { return s.alpha * s.alpha * sup_of(*s.inner); },
          [](const detail::Multiple& m) {
            return m.factor >= 0 ? m.factor * sup_of(*m.inner) : m.factor * inf_of(*m.inner);
          },
          [](const detail::Even& e) { return sup_of(*e.inner); },
          [](const detail::Mirror& m) { return sup_of(*m.inner); },
          [](const detail::Clip& c) {
            return c.positive ? sup_of(*c.inner) : -inf_of(*c.inner);
          },
      },
      n.kind);
}

double inf_of(const Node& n) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) { return 0.0; },
          [](const detail::SquareWell& w) { return std::min(0.0, w.depth); },
          [](const detail::PoschlTeller&) { return 0.0; },
          [](const detail::Gaussian& g) { return std::min(0.0, g.amplitude); },
          [](const detail::PiecewiseConstant& p) {
            return std::min(0.0, *std::min_element(p.values.begin(), p.values.end()));
          },
          [](const detail::Sampled& s) {
            return std::min(0.0, *std::min_element(s.values.begin(), s.values.end()));
          },
          [](const detail::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += inf_of(*t);
            return acc;
          },
          [](const detail::Scaled& s) { return s.alpha * s.alpha * inf_of(*s.inner); },
          [](const detail::Multiple& m) {
            return m.factor >= 0 ? m.factor * inf_of(*m.inner) : m.factor * sup_of(*m.inner);
          },
          [](const detail::Even& e) { return inf_of(*e.inner); },
          [](const detail::Mirror& m) { return inf_of(*m.inner); },
          [](const detail::Clip&) { return 0.0; },
      },
      n.kind);
}

std::optional<double> constant_on(const Node& n, double lo, double hi) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) -> std::optional<double> { return 0.0; },
          [=](const detail::SquareWell& w) -> std::optional<double> {
            if (lo >= w.left && hi <= w.right) return w.depth;
            if (hi <= w.left || lo >= w.right) return 0.0;
            return std::nullopt;
          },
          [](const detail::PoschlTeller&) -> std::optional<double> { return std::nullopt; },
          [](const detail::Gaussian& g) -> std::optional<double> {
            if (g.amplitude == 0.0) return 0.0;
            return std::nullopt;
          },
          [=](const detail::PiecewiseConstant& p) -> std::optional<double> {
            const auto& b = p.breakpoints;
            if (hi <= b.front() || lo >= b.back()) return 0.0;
            auto it = std::upper_bound(b.begin(), b.end(), lo);
            if (it == b.begin()) return std::nullopt;
            if (it != b.end() && hi > *it) return std::nullopt;
            return p.values[static_cast<std::size_t>(it - b.begin()) - 1];
          },
          [=](const detail::Sampled& s) -> std::optional<double> {
            if (hi <= s.grid.front() || lo >= s.grid.back()) return 0.0;
            return std::nullopt;
          },
          [=](const detail::Sum& s) -> std::optional<double> {
            double acc = 0.0;
            for (const auto& t : s.terms) {
              auto c = constant_on(*t, lo, hi);
              if (!c) return std::nullopt;
              acc += *c;
            }
            return acc;
          },
          [=](const detail::Scaled& s) -> std::optional<double> {
            auto c = constant_on(*s.inner, s.alpha * lo, s.alpha * hi);
            if (!c) return std::nullopt;
            return s.alpha * s.alpha * *c;
          },
          [=](const detail::Multiple& m) -> std::optional<double> {
            auto c = constant_on(*m.inner, lo, hi);
            if (!c) return std::nullopt;
            return m.factor * *c;
          },
          [=](const detail::Even& e) -> std::optional<double> {
            if (lo >= 0) return constant_on(*e.inner, lo, hi);
            if (hi <= 0) return constant_on(*e.inner, -hi, -lo);
            auto l = constant_on(*e.inner, 0.0, -lo);
            auto r = constant_on(*e.inner, 0.0, hi);
            if (l && r && *l == *r) return l;
            return std::nullopt;
          },
          [=](const detail::Mirror& m) { return constant_on(*m.inner, -hi, -lo); },
          [=](const detail::Clip& c) -> std::optional<double> {
            auto v = constant_on(*c.inner, lo, hi);
            if (!v) return std::nullopt;
            return std::max(0.0, c.positive ? *v : -*v);
          },
      },
      n.kind);
}

// ---------------------------------------------------------------------------
// closed-form integrals

// tanh(b) - tanh(a) for a <= b without cancellation in the tails.
double tanh_diff(double a, double b) {
  auto one_minus = [](double z) { return 2.0 / (1.0 + std::exp(2.0 * z)); };  // 1 - tanh z
  auto one_plus = [](double z) { return 2.0 / (1.0 + std::exp(-2.0 * z)); };   // 1 + tanh z
  if (a >= 0) return one_minus(a) - one_minus(b);
  if (b <= 0) return one_plus(b) - one_plus(a);
  return std::tanh(b) - std::tanh(a);
}

double erf_diff(double a, double b) {
  if (a >= 0) return std::erfc(a) - std::erfc(b);
  if (b <= 0) return std::erfc(-b) - std::erfc(-a);
  return std::erf(b) - std::erf(a);
}

double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

// Exact integral of the linear interpolant over [lo, hi].
double sampled_integral(const detail::Sampled& s, double lo, double hi) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < s.grid.size(); ++i) {
    const double a = std::max(s.grid[i], lo), b = std::min(s.grid[i + 1], hi);
    if (!(a < b)) continue;
    acc += 0.5 * (b - a) * (sampled_value(s, a) + sampled_value(s, b));
  }
  return acc;
}

std::optional<double> exact_integral(const Node& n, double lo, double hi) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) -> std::optional<double> { return 0.0; },
          [=](const detail::SquareWell& w) -> std::optional<double> {
            return w.depth * overlap(w.left, w.right, lo, hi);
          },
          [=](const detail::PoschlTeller& p) -> std::optional<double> {
            return p.order * (p.order + 1.0) * p.scale *
                   tanh_diff(p.scale * (lo - p.center), p.scale * (hi - p.center));
          },
          [=](const detail::Gaussian& g) -> std::optional<double> {
            return g.amplitude * g.width * std::sqrt(std::numbers::pi) / 2.0 *
                   erf_diff((lo - g.center) / g.width, (hi - g.center) / g.width);
          },
          [=](const detail::PiecewiseConstant& p) -> std::optional<double> {
            double acc = 0.0;
            for (std::size_t i = 0; i < p.values.size(); ++i)
              acc += p.values[i] * overlap(p.breakpoints[i], p.breakpoints[i + 1], lo, hi);
            return acc;
          },
          [=](const detail::Sampled& s) -> std::optional<double> {
            return sampled_integral(s, lo, hi);
          },
          [=](const detail::Sum& s) -> std::optional<double> {
            double acc = 0.0;
            for (const auto& t : s.terms) {
              auto c = exact_integral(*t, lo, hi);
              if (!c) return std::nullopt;
              acc += *c;
            }
            return acc;
          },
          [=](const detail::Scaled& s) -> std::optional<double> {
            auto c = exact_integral(*s.inner, s.alpha * lo, s.alpha * hi);
            if (!c) return std::nullopt;
            return s.alpha * *c;
          },
          [=](const detail::Multiple& m) -> std::optional<double> {
            auto c = exact_integral(*m.inner, lo, hi);
            if (!c) return std::nullopt;
            return m.factor * *c;
          },
          [=](const detail::Even& e) -> std::optional<double> {
            double acc = 0.0;
            if (hi > 0) {
              auto c = exact_integral(*e.inner, std::max(lo, 0.0), hi);
              if (!c) return std::nullopt;
              acc += *c;
            }
            if (lo < 0) {
              auto c = exact_integral(*e.inner, std::max(-hi, 0.0), -lo);
              if (!c) return std::nullopt;
              acc += *c;
            }
            return acc;
          },
          [=](const detail::Mirror& m) { return exact_integral(*m.inner, -hi, -lo); },
          [=](const detail::Clip& c) -> std::optional<double> {
            if (const auto* p = std::get_if<detail::PiecewiseConstant>(&c.inner->kind)) {
              double acc = 0.0;
              for (std::size_t i = 0; i < p->values.size(); ++i) {
                const double v = c.positive ? p->values[i] : -p->values[i];
                acc += std::max(0.0, v) * overlap(p->breakpoints[i], p->breakpoints[i + 1], lo, hi);
              }
              return acc;
            }
            return std::nullopt;
          },
      },
      n.kind);
}

// Exact integral of V^p over [lo, hi] where the family admits one.
std::optional<double> exact_lp(const Node& n, double p, double lo, double hi) {
  return std::visit(
      overloaded{
          [](const detail::Zero&) -> std::optional<double> { return 0.0; },
          [=](const detail::SquareWell& w) -> std::optional<double> {
            return std::pow(w.depth, p) * overlap(w.left, w.right, lo, hi);
          },
          [=](const detail::PiecewiseConstant& pc) -> std::optional<double> {
            double acc = 0.0;
            for (std::size_t i = 0; i < pc.values.size(); ++i) {
              const double len = overlap(pc.breakpoints[i], pc.breakpoints[i + 1], lo, hi);
              if (len == 0.0) continue;
              if (pc.values[i] < 0)
                throw precondition_error("lp_integral: potential takes negative values");
              acc += std::pow(pc.values[i], p) * len;
            }
            return acc;
          },
          [=](const detail::Scaled& s) -> std::optional<double> {
            auto c = exact_lp(*s.inner, p, s.alpha * lo, s.alpha * hi);
            if (!c) return std::nullopt;
            return std::pow(s.alpha, 2.0 * p - 1.0) * *c;
          },
          [=](const detail::Multiple& m) -> std::optional<double> {
            if (m.factor < 0) return std::nullopt;
            auto c = exact_lp(*m.inner, p, lo, hi);
            if (!c) return std::nullopt;
            return std::pow(m.factor, p) * *c;
          },
          [=](const detail::Even& e) -> std::optional<double> {
            double acc = 0.0;
            if (hi > 0) {
              auto c = exact_lp(*e.inner, p, std::max(lo, 0.0), hi);
              if (!c) return std::nullopt;
              acc += *c;
            }
            if (lo < 0) {
              auto c = exact_lp(*e.inner, p, std::max(-hi, 0.0), -lo);
              if (!c) return std::nullopt;
              acc += *c;
            }
            return acc;
          },
          [=](const detail::Mirror& m) { return exact_lp(*m.inner, p, -hi, -lo); },
          [](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      n.kind);
}

// Quadrature of g over [lo, hi], split at the kinks inside the support.
template <class G>
double piecewise_quadrature(const Potential& v, G&& g, double lo, double hi) {
  const Interval s = v.support();
  if (s.empty()) return 0.0;
  lo = std::max(lo, s.lo);
  hi = std::min(hi, s.hi);
  if (!(lo < hi)) return 0.0;
  std::vector<double> cuts{lo, hi};
  for (double k : v.kinks())
    if (k > lo && k < hi) cuts.push_back(k);
  // Finite cuts at the core keep the infinite pieces smooth and decaying.
  const Interval c = v.core();
  if (!c.empty()) {
    if (c.lo > lo && c.lo < hi) cuts.push_back(c.lo);
    if (c.hi > lo && c.hi < hi) cuts.push_back(c.hi);
  }
  sort_unique(cuts);
  const Tolerance tol{1e-10 / static_cast<double>(cuts.size()), 1e-12, 200};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += integrate_adaptive(g, cuts[i], cuts[i + 1], tol).value;
  return acc;
}

NodePtr zero_node() { return make_node(detail::Zero{}); }

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i] < v[i + 1])) throw precondition_error(std::string(what) + " must be strictly increasing");
}

}  // namespace

// ---------------------------------------------------------------------------

Potential::Potential() : node_(zero_node()), domain_(Domain::full_line()) {}

Potential::Potential(std::shared_ptr<const detail::Node> node, Domain domain)
    : node_(std::move(node)), domain_(domain) {}

double Potential::operator()(double x) const { return value(*node_, x); }

Potential Potential::on(const Domain& d) const { return Potential(node_, d); }

std::string Potential::family() const {
  static constexpr const char* names[] = {"zero",     "square_well", "poschl_teller", "gaussian",
                                          "piecewise_constant",      "sampled",       "sum",
                                          "scaled",   "multiple",    "even",          "mirror",
                                          "clip"};
  return names[node_->kind.index()];
}

std::vector<double> Potential::kinks() const { return lt::kinks(*node_); }
Interval Potential::support() const { return lt::support(*node_); }
Interval Potential::core() const { return lt::core(*node_); }
double Potential::sup() const { return sup_of(*node_); }
double Potential::inf() const { return inf_of(*node_); }
std::optional<double> Potential::constant_on(double lo, double hi) const {
  return lt::constant_on(*node_, lo, hi);
}
bool Potential::is_zero() const { return support().empty(); }

Potential zero_potential(Domain d) { return Potential(zero_node(), d); }

Potential square_well(double depth, double left, double right, Domain d) {
  if (!(depth > 0) || !std::isfinite(depth)) throw precondition_error("square_well: depth must be positive");
  if (!(left < right)) throw precondition_error("square_well: need left < right");
  return Potential(make_node(detail::SquareWell{depth, left, right}), d);
}

Potential poschl_teller(double order, double center, double scale, Domain d) {
  if (!(order > 0)) throw precondition_error("poschl_teller: order must be positive");
  if (!(scale > 0)) throw precondition_error("poschl_teller: scale must be positive");
  return Potential(make_node(detail::PoschlTeller{order, center, scale}), d);
}

Potential gaussian(double amplitude, double center, double width, Domain d) {
  if (!(width > 0)) throw precondition_error("gaussian: width must be positive");
  return Potential(make_node(detail::Gaussian{amplitude, center, width}), d);
}

Potential piecewise_constant(std::vector<double> breakpoints, std::vector<double> values, Domain d) {
  if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
    throw precondition_error("piecewise_constant: need n+1 breakpoints for n values");
  if (!all_finite(breakpoints) || !all_finite(values))
    throw precondition_error("piecewise_constant: non-finite data");
  require_increasing(breakpoints, "piecewise_constant: breakpoints");
  return Potential(make_node(detail::PiecewiseConstant{std::move(breakpoints), std::move(values)}), d);
}

Potential sampled(std::vector<double> grid, std::vector<double> values, Domain d) {
  if (grid.size() < 2 || grid.size() != values.size())
    throw precondition_error("sampled: grid and values must have the same length >= 2");
  if (!all_finite(grid) || !all_finite(values)) throw precondition_error("sampled: non-finite data");
  require_increasing(grid, "sampled: grid");
  return Potential(make_node(detail::Sampled{std::move(grid), std::move(values)}), d);
}

Potential sum(std::vector<Potential> terms) {
  if (terms.empty()) return zero_potential();
  const Domain d = terms.front().domain();
  std::vector<NodePtr> nodes;
  for (const auto& t : terms) {
    if (!(t.domain() == d)) throw precondition_error("sum: terms must share one domain");
    nodes.push_back(t.node_ptr());
  }
  return Potential(make_node(detail::Sum{std::move(nodes)}), d);
}

Potential scaled(double alpha, const Potential& v) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw precondition_error("scaled: alpha must be positive");
  const Domain& d = v.domain();
  const Domain nd = d.kind() == Domain::Kind::interval ? Domain::interval(d.lower() / alpha, d.upper() / alpha) : d;
  return Potential(make_node(detail::Scaled{alpha, v.node_ptr()}), nd);
}

Potential multiple(double factor, const Potential& v) {
  if (!std::isfinite(factor)) throw precondition_error("multiple: factor must be finite");
  return Potential(make_node(detail::Multiple{factor, v.node_ptr()}), v.domain());
}

Potential mirrored(const Potential& v) {
  const Domain& d = v.domain();
  const Domain nd = d.kind() == Domain::Kind::full_line ? d : Domain::interval(-d.upper(), -d.lower());
  return Potential(make_node(detail::Mirror{v.node_ptr()}), nd);
}

double evaluate(const Potential& v, double x) {
  if (!v.domain().contains(x)) {
    std::ostringstream os;
    os << "evaluate: x = " << x << " outside the domain";
    throw precondition_error(os.str());
  }
  return v(x);
}

double integrate(const Potential& v, double from, double to) {
  if (from > to) return -integrate(v, to, from);
  const Interval s = v.support();
  if (s.empty()) return 0.0;
  if (auto exact = exact_integral(v.node(), from, to)) return *exact;
  return piecewise_quadrature(v, [&](double x) { return v(x); }, from, to);
}

double integrate(const Potential& v) {
  return integrate(v, v.domain().lower(), v.domain().upper());
}

double lp_integral(const Potential& v, double p) {
  if (!(p >= 1.0)) throw precondition_error("lp_integral: p must be >= 1");
  const double lo = v.domain().lower(), hi = v.domain().upper();
  if (v.is_zero()) return 0.0;
  if (auto exact = exact_lp(v.node(), p, lo, hi)) return *exact;
  if (p == 1.0 && v.inf() >= 0.0) return integrate(v);
  const double slack = 1e-13 * std::max(1.0, v.sup());
  return piecewise_quadrature(
      v,
      [&](double x) {
        const double y = v(x);
        if (y < -slack) throw precondition_error("lp_integral: potential takes negative values");
        return y <= 0.0 ? 0.0 : std::pow(y, p);
      },
      lo, hi);
}

namespace {

// Positive and negative parts of sampled data, exact: zero crossings of the
// interpolant become grid points.
std::pair<detail::Sampled, detail::Sampled> split_sampled(const detail::Sampled& s) {
  std::vector<double> g, plus, minus;
  auto push = [&](double x, double y) {
    g.push_back(x);
    plus.push_back(std::max(0.0, y));
    minus.push_back(std::max(0.0, -y));
  };
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (i > 0) {
      const double y0 = s.values[i - 1], y1 = s.values[i];
      if ((y0 < 0 && y1 > 0) || (y0 > 0 && y1 < 0)) {
        const double t = y0 / (y0 - y1);
        const double x = s.grid[i - 1] + t * (s.grid[i] - s.grid[i - 1]);
        if (x > g.back() && x < s.grid[i]) push(x, 0.0);
      }
    }
    push(s.grid[i], s.values[i]);
  }
  return {detail::Sampled{g, plus}, detail::Sampled{g, minus}};
}

std::pair<NodePtr, NodePtr> split_node(const NodePtr& n) {
  const double lo = inf_of(*n), hi = sup_of(*n);
  if (lo >= 0.0) return {n, zero_node()};
  if (hi <= 0.0) return {zero_node(), make_node(detail::Multiple{-1.0, n})};
  return std::visit(
      overloaded{
          [&](const detail::PiecewiseConstant& p) -> std::pair<NodePtr, NodePtr> {
            std::vector<double> plus, minus;
            for (double v : p.values) {
              plus.push_back(std::max(0.0, v));
              minus.push_back(std::max(0.0, -v));
            }
            return {make_node(detail::PiecewiseConstant{p.breakpoints, plus}),
                    make_node(detail::PiecewiseConstant{p.breakpoints, minus})};
          },
          [&](const detail::Sampled& s) -> std::pair<NodePtr, NodePtr> {
            auto [plus, minus] = split_sampled(s);
            return {make_node(std::move(plus)), make_node(std::move(minus))};
          },
          [&](const detail::Multiple& m) -> std::pair<NodePtr, NodePtr> {
            auto [p, q] = split_node(m.inner);
            const double c = std::fabs(m.factor);
            auto wrap = [c](const NodePtr& x) { return make_node(detail::Multiple{c, x}); };
            if (m.factor >= 0) return {wrap(p), wrap(q)};
            return {wrap(q), wrap(p)};
          },
          [&](const detail::Scaled& s) -> std::pair<NodePtr, NodePtr> {
            auto [p, q] = split_node(s.inner);
            return {make_node(detail::Scaled{s.alpha, p}), make_node(detail::Scaled{s.alpha, q})};
          },
          [&](const detail::Even& e) -> std::pair<NodePtr, NodePtr> {
            auto [p, q] = split_node(e.inner);
            return {make_node(detail::Even{p}), make_node(detail::Even{q})};
          },
          [&](const detail::Mirror& m) -> std::pair<NodePtr, NodePtr> {
            auto [p, q] = split_node(m.inner);
            return {make_node(detail::Mirror{p}), make_node(detail::Mirror{q})};
          },
          [&](const auto&) -> std::pair<NodePtr, NodePtr> {
            return {make_node(detail::Clip{true, n}), make_node(detail::Clip{false, n})};
          },
      },
      n->kind);
}

}  // namespace

SignSplit sign_split(const Potential& v) {
  auto [p, m] = split_node(v.node_ptr());
  return {Potential(p, v.domain()), Potential(m, v.domain())};
}

Potential even_extension(const Potential& v) {
  if (v.domain().kind() != Domain::Kind::half_line)
    throw precondition_error("even_extension: potential must live on the half-line");
  const auto& kind = v.node().kind;
  if (const auto* w = std::get_if<detail::SquareWell>(&kind); w && w->left <= 0.0) {
    return square_well(w->depth, -w->right, w->right);
  }
  if (const auto* p = std::get_if<detail::PiecewiseConstant>(&kind); p && p->breakpoints.front() >= 0.0) {
    std::vector<double> b, vals;
    const auto& pb = p->breakpoints;
    for (std::size_t i = pb.size(); i-- > 0;) b.push_back(-pb[i]);
    for (std::size_t i = p->values.size(); i-- > 0;) vals.push_back(p->values[i]);
    if (pb.front() > 0.0) vals.push_back(0.0);
    for (std::size_t i = (pb.front() == 0.0) ? 1 : 0; i < pb.size(); ++i) b.push_back(pb[i]);
    vals.insert(vals.end(), p->values.begin(), p->values.end());
    return piecewise_constant(b, vals);
  }
  return Potential(make_node(detail::Even{v.node_ptr()}), Domain::full_line());
}

}  // namespace lt
