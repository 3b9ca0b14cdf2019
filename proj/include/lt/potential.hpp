#ifndef LT_POTENTIAL_HPP
#define LT_POTENTIAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lt/numerics.hpp"

namespace lt {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo < hi); }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Where the operator acts: the whole line, the half-line [0, inf) with a
// Neumann end at 0, or a closed interval.
class Domain {
 public:
  enum class Kind { full_line, half_line, interval };

  static Domain full_line() { return Domain(-kInf, kInf); }
  static Domain half_line() { return Domain(0.0, kInf); }
  static Domain interval(double a, double b);

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  Kind kind() const;
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool operator==(const Domain&) const = default;

 private:
  Domain(double lo, double hi) : lo_(lo), hi_(hi) {}
  double lo_, hi_;
};

namespace detail {
struct Node;
}

/// A real potential V on a domain, built from closed-form families and
/// algebraic transforms. Immutable; copies share structure.
///
/// Families: square well `depth` on [left, right]; Poschl-Teller
/// order(order+1) scale^2 sech^2(scale (x - center)); Gaussian
/// amplitude exp(-((x - center)/width)^2); piecewise constant; sampled with
/// linear interpolation. Piecewise and sampled data vanish outside their
/// breakpoints. Transforms: sums, coordinate scaling alpha^2 V(alpha x),
/// constant multiples, mirror x -> -x, even extension V(|x|), and the
/// positive / negative parts.
class Potential {
 public:
  Potential();  // V = 0 on the full line

  /// Unchecked pointwise value (the formula is defined on all of R).
  double operator()(double x) const;

  const Domain& domain() const { return domain_; }
  /// Same function considered on another domain.
  Potential on(const Domain& d) const;

  std::string family() const;

  /// Points where V or V' may jump, sorted and unique.
  std::vector<double> kinks() const;
  /// V vanishes outside this set (possibly unbounded, empty for V = 0).
  Interval support() const;
  /// Finite interval carrying all but a negligible part of the mass.
  Interval core() const;
  /// Bounds sup V and inf V (inf <= 0 <= sup always).
  double sup() const;
  double inf() const;
  /// The constant value of V on [lo, hi], when it is structurally constant.
  std::optional<double> constant_on(double lo, double hi) const;
  bool is_zero() const;

  const detail::Node& node() const { return *node_; }
  std::shared_ptr<const detail::Node> node_ptr() const { return node_; }
  Potential(std::shared_ptr<const detail::Node> node, Domain domain);

 private:
  std::shared_ptr<const detail::Node> node_;
  Domain domain_;
};

Potential zero_potential(Domain d = Domain::full_line());
Potential square_well(double depth, double left, double right, Domain d = Domain::full_line());
Potential poschl_teller(double order, double center = 0.0, double scale = 1.0,
                        Domain d = Domain::full_line());
Potential gaussian(double amplitude, double center, double width, Domain d = Domain::full_line());
Potential piecewise_constant(std::vector<double> breakpoints, std::vector<double> values,
                             Domain d = Domain::full_line());
Potential sampled(std::vector<double> grid, std::vector<double> values,
                  Domain d = Domain::full_line());
/// Terms must share one domain.
Potential sum(std::vector<Potential> terms);
/// alpha^2 V(alpha x), alpha > 0; the domain is rescaled by 1/alpha.
Potential scaled(double alpha, const Potential& v);
/// factor * V.
Potential multiple(double factor, const Potential& v);
/// V(-x) on the mirrored domain.
Potential mirrored(const Potential& v);

/// Domain-checked value.
double evaluate(const Potential& v, double x);

/// Integral of V over [from, to] (ends may be infinite). Closed forms where
/// the family has one, adaptive quadrature otherwise.
double integrate(const Potential& v, double from, double to);
/// Integral of V over its whole domain.
double integrate(const Potential& v);

/// Integral of V^p over the domain, p >= 1. Requires V >= 0.
double lp_integral(const Potential& v, double p);

struct SignSplit {
  Potential plus;   // max{0, V}
  Potential minus;  // max{0, -V}
};
SignSplit sign_split(const Potential& v);

/// V(|x|) on the full line for V given on the half-line.
Potential even_extension(const Potential& v);

}  // namespace lt

#endif  // LT_POTENTIAL_HPP
