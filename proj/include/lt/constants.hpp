#ifndef LT_CONSTANTS_HPP
#define LT_CONSTANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lt/numerics.hpp"

namespace lt {

/// x tanh x, x >= 0.
double theta_fn(double x);
/// Inverse of theta_fn: the x >= 0 with x tanh x = y.
double varsigma(double y);

/// Gamma(g+1) / (2 sqrt(pi) Gamma(g+3/2)).
double classical_constant(double gamma);
/// g^(g+1) / (sqrt2 (g-1/2)^(g+1/2) (g+1/2)), g > 1/2.
double lt_constant(double gamma);
/// Infimum over 1 < m < min(3/2, g+1/2) of the Glaser-Grosse-Martin expression.
double ggm_constant(double gamma);
/// 2 L_cl (g-1/2)^(g-1/2) / (g+1/2)^(g-1/2), with 0^0 = 1 at g = 1/2.
double one_state_constant(double gamma);
/// 4 varsigma(3) L_cl / 3, g in [1/2, 3/2].
double star_constant(double gamma);
/// (varsigma(3)/3)^(3/2-g) (3/16)^(g-1/2), g in (1/2, 3/2).
double char_interp_constant(double gamma);
/// varsigma(3)^(2g) / 3^(g+1/2): the bracketing argument carried over to g > 1/2.
double direct_bracketing_constant(double gamma);

struct ThetaParams {
  double eta = 0.5;
  double p0 = 1.0;
  double p1 = 2.0;
};

enum class ThetaMode { closed, numeric };

/// Theta(eta, p0, p1) = int_0^inf t^(-eta-1) inf_{y0+y1=1} (|y0|^p0 + t|y1|^p1) dt.
/// Closed mode supports (p0, p1) = (1, 2) and (1/2, 3/2).
double theta_weight(const ThetaParams& params, ThetaMode mode = ThetaMode::closed);

struct MFactor {
  double value;
  int num;  // argmin N = num / den
  int den;
};

/// Minimum of (1+N)^(1-eta) (1+1/N)^eta over N in {k, 1/k : k = 1, 2, ...}.
MFactor m_factor(double eta);

/// Interpolated bound C(eta) (varsigma(3)/3)^(1-eta) (3/16)^eta, g = 1/2 + eta.
double doublestar_constant(double gamma);

/// The g in (1, 1.3) where doublestar_constant and star_constant cross.
double crossover(const Tolerance& tol = {1e-10, 1e-10, 200});

struct DensityConstants {
  double k32;        // 4 / (27 L_one^2)
  double k11_lower;  // 1 / (2 L_half)
};

/// Defaults: L_half = varsigma(3)/3, L_one = star_constant(1).
DensityConstants density_constants(std::optional<double> l_half = std::nullopt,
                                   std::optional<double> l_one = std::nullopt);

struct ConstantsRow {
  double gamma = 0.5;
  double eta = 0.0;
  std::optional<double> l_cl, l_lt, l_ggm, l_one, l_star, l_char, l_dstar;

  /// min(L_star, L_dstar) over the entries present.
  std::optional<double> best() const;
};

ConstantsRow constants_row(double gamma);

/// CSV with header gamma,L_cl,L_LT,L_GGM,L_one,L_star,L_char,L_dstar[,L_best];
/// absent entries are empty.
std::string constants_csv(const std::vector<ConstantsRow>& rows, bool with_best = false);

}  // namespace lt

#endif  // LT_CONSTANTS_HPP
