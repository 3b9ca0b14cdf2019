#ifndef LT_STURM_HPP
#define LT_STURM_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "lt/numerics.hpp"
#include "lt/potential.hpp"

namespace lt {

enum class EndCondition { neumann, dirichlet };
enum class Boundary { neumann, dirichlet, whole_line, half_line_neumann };

/// Negative eigenvalues E_1 <= E_2 <= ... < 0 with certified radii.
///
/// States whose sign cannot be certified (|E| within the resolution of the
/// solver, or a truncation sandwich that never closes) are kept apart in
/// `threshold`; each entry there is a lower bound for a possible eigenvalue
/// in [entry, 0).
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> radii;
  std::vector<double> threshold;
  Boundary boundary = Boundary::whole_line;

  std::size_t size() const { return eigenvalues.size(); }
  bool empty() const { return eigenvalues.empty(); }
};

struct RieszMean {
  double gamma = 0.5;
  double value = 0.0;
  double error = 0.0;
};

/// Linear finite elements for -u'' - V u = E u on a node set: the symmetric
/// tridiagonal pencil (K - P, M). Natural (Neumann) ends keep the end node,
/// Dirichlet ends drop it.
class FiniteElementPencil {
 public:
  FiniteElementPencil(const Potential& v, std::span<const double> nodes, EndCondition left,
                      EndCondition right);

  Eigen::Index size() const { return p_diag_.size(); }
  /// Number of eigenvalues strictly below e (inertia of A - e B).
  int count_below(double e) const;
  /// Every eigenvalue below `ceiling`, ascending, by Sturm bisection.
  std::vector<double> eigenvalues_below(double ceiling) const;
  /// Eigenvalues in (-inf, -noise_floor()) are resolved from rounding.
  double noise_floor() const { return noise_floor_; }
  /// All eigenvalues are >= this value.
  double lower_bound() const { return lower_bound_; }

 private:
  Eigen::VectorXd h_, p_diag_, p_off_, b_diag_, b_off_;
  double k_first_ = 0.0, k_last_ = 0.0;
  double noise_floor_ = 0.0;
  double lower_bound_ = 0.0;
};

/// Mesh of [a, b] with every kink of V as a node: 2^level elements in
/// total, apportioned over the segments between kinks with element length
/// growing in proportion to the distance from the bulk of V. Level l + 1
/// halves every element of level l.
std::vector<double> build_mesh(const Potential& v, double a, double b, int level);

/// Negative spectrum of -u'' - Vu on [a, b] with the given end conditions.
/// Eigenvalues are Romberg-extrapolated over the mesh ladder 2^8 ... 2^16;
/// each radius is the change of the extrapolant between levels plus a
/// rounding floor of order eps * sup|V| * sqrt(nodes).
Spectrum solve_interval(const Potential& v, double a, double b, EndCondition bc,
                        const Tolerance& tol = {1e-8, 1e-8, 200});
Spectrum solve_interval(const Potential& v, double a, double b, EndCondition left,
                        EndCondition right, const Tolerance& tol);

/// Negative spectrum on the potential's domain (full line, or half-line
/// with a Neumann end at 0). The domain is truncated where the tail mass is
/// negligible, and every eigenvalue is sandwiched between the Neumann
/// (below) and Dirichlet (above) truncations.
Spectrum solve_line(const Potential& v, const Tolerance& tol = {1e-8, 1e-8, 200});

RieszMean riesz_mean(const Spectrum& spec, double gamma);

/// coth^2(lambda l)/lambda^2 (int_a^b V)^2, lambda = sqrt|E|: bounds the
/// number of Neumann eigenvalues below E < 0.
double bs_interval_bound(const Potential& v, double a, double b, double energy);

/// (1/2) int V: bounds sqrt|E_1| on the line.
double bs_line_ground_bound(const Potential& v);

struct SobolevCheck {
  double lhs;  // sup |u|^2 after removing the mean
  double rhs;  // (l/3) int |u'|^2
};

/// Pointwise bound for a mean-zero piecewise-linear u on [grid.front(), grid.back()].
SobolevCheck sobolev_pointwise_check(std::span<const double> grid, std::span<const double> values);

}  // namespace lt

#endif  // LT_STURM_HPP
