#ifndef LT_BRACKETING_HPP
#define LT_BRACKETING_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "lt/numerics.hpp"
#include "lt/potential.hpp"
#include "lt/sturm.hpp"

namespace lt {

/// Breakpoints 0 = l_0 < l_1 < ... on the half-line with
/// (l_{k+1} - l_k) int_{I_k} V = 3 on every finite interval. When the mass
/// beyond the last breakpoint is negligible the final interval is infinite;
/// that leftover mass is kept in `tail_mass`.
struct Partition {
  std::vector<double> breakpoints;
  std::vector<double> masses;        // per finite interval
  std::vector<double> lambda_upper;  // varsigma(3)/3 * mass
  std::vector<double> lambda_lower;  // mass / sqrt(3)
  bool infinite_tail = false;
  double tail_mass = 0.0;
  bool degenerate = false;  // V = 0: one infinite interval, nothing else

  std::size_t intervals() const { return masses.size(); }
};

struct PartitionOptions {
  Tolerance tol{1e-13, 1e-13, 500};
  /// Stop once the remaining mass is below this fraction of the total.
  double tail_threshold = 1e-12;
  std::size_t max_intervals = 100000;
};

/// V >= 0 on the half-line with finite positive mass.
Partition build_partition(const Potential& v, const PartitionOptions& opt = {});

struct GroundBounds {
  double lambda1;  // sqrt|E_1| of the Neumann problem on I_k
  double radius;
  double lower;
  double upper;
};

/// Ground state of the Neumann problem on the k-th finite interval, which
/// must carry exactly one negative eigenvalue.
GroundBounds interval_ground_bounds(const Potential& v, const Partition& p, std::size_t k,
                                    const Tolerance& tol = {1e-9, 1e-9, 200});

struct InequalityCheck {
  std::string name;
  double lhs;
  double rhs;
  double allowance;  // combined certified error of both sides
  bool pass;         // lhs <= rhs + allowance
};

struct Theorem1Certificate {
  Domain::Kind domain = Domain::Kind::full_line;
  double integral_v = 0.0;
  RieszMean sum_sqrt;          // sum sqrt|E_i(H)|
  RieszMean split_sum;         // sum over the left and right half-line problems (full line only)
  double bracket_sum = 0.0;    // sum of lambda_1(I_k)
  double bracket_error = 0.0;
  double upper = 0.0;          // varsigma(3)/3 * int V
  double lower = 0.0;          // int V / 4
  /// Partition of the right half-line and, on the full line, of the mirrored left half.
  Partition right, left;
  std::vector<double> lambda_right, lambda_left;
  std::vector<InequalityCheck> checks;
  /// varsigma(3)^(2 gamma) / 3^(gamma + 1/2) at gamma = 1/2 .. 3/2 (diagnostic).
  std::vector<std::pair<double, double>> direct_constants;

  bool pass() const;
};

/// Certifies 1/4 int V <= sum sqrt|E_i| <= bracketing sum <= varsigma(3)/3 int V
/// for V >= 0 on the half-line or the line.
Theorem1Certificate certify_theorem1(const Potential& v, const Tolerance& tol = {1e-9, 1e-9, 200});

nlohmann::json certificate_json(const Theorem1Certificate& c);
nlohmann::json partition_json(const Partition& p);

}  // namespace lt

#endif  // LT_BRACKETING_HPP
