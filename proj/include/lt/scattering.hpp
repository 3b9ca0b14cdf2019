#ifndef LT_SCATTERING_HPP
#define LT_SCATTERING_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lt/numerics.hpp"
#include "lt/potential.hpp"

namespace lt {

struct ScatteringData {
  std::vector<double> k_grid;
  std::vector<std::complex<double>> r_values;
  std::vector<std::complex<double>> t_values;
  std::vector<double> unitarity_defect;  // |1 - |R|^2 - |T|^2|
  /// pi^-1 int_R ln(1 - |R(k)|^2) dk, from adaptive quadrature in k.
  double log_integral = 0.0;
  double log_integral_error = 0.0;
  /// V is treated as zero outside this window.
  double x_left = 0.0, x_right = 0.0;
};

/// Window [-X, X] outside which |V| has mass below `tail`; the support
/// itself when it is compact.
Interval scattering_window(const Potential& v, double tail = 1e-10);

/// Real fundamental matrix of -u'' - V u = k^2 u across the window, mapping
/// (u, u') at the left end to the right end. Constant pieces use the exact
/// propagator, the rest an adaptive fourth-order Magnus integration.
Eigen::Matrix2d transfer_matrix(const Potential& v, const Interval& window, double k, const Tolerance& tol);

struct Amplitudes {
  std::complex<double> r, t;
  double det_defect;  // |det Phi - 1|
};

/// Left-incident reflection and transmission amplitudes at wavenumber k > 0.
Amplitudes amplitudes(const Potential& v, const Interval& window, double k, const Tolerance& tol);

/// Geometric grid from 0.01 to 100.
std::vector<double> default_k_grid(std::size_t points = 400);

/// R(k) on the grid plus the log integral. Signed V allowed.
ScatteringData reflection_coefficient(const Potential& v, const std::vector<double>& k_grid,
                                      const Tolerance& tol = {1e-10, 1e-10, 200});

/// pi^-1 int_R ln(1 - |R|^2) dk with its estimated error.
QuadratureResult log_integral(const Potential& v, const Tolerance& tol = {1e-10, 1e-10, 200});

struct SumRule {
  double integral_v;
  double four_sum_sqrt;  // 4 sum sqrt|E_i|
  double log_term;
  double residual;       // int V - 4 sum sqrt|E_i| - log term
  double error;          // combined error estimate of the three terms
};

/// First Faddeev-Zakharov trace identity, each term computed independently.
SumRule sum_rule_residual(const Potential& v, const Tolerance& tol = {1e-10, 1e-10, 200});

struct Theorem2Check {
  double lhs;  // pi^-1 int |ln(1 - |R|^2)| dk
  double rhs;  // int V_- + (4 L_half - 1) int V_+
  double error;
  bool pass;
};

/// L_half defaults to varsigma(3)/3.
Theorem2Check theorem2_check(const Potential& v, std::optional<double> l_half = std::nullopt,
                             const Tolerance& tol = {1e-10, 1e-10, 200});

/// CSV with header k,re_R,im_R,abs_R2,unitarity_defect.
std::string scattering_csv(const ScatteringData& data);

}  // namespace lt

#endif  // LT_SCATTERING_HPP
