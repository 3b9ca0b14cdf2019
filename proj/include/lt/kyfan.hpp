#ifndef LT_KYFAN_HPP
#define LT_KYFAN_HPP

#include <vector>

#include "lt/numerics.hpp"
#include "lt/potential.hpp"
#include "lt/sturm.hpp"

namespace lt {

/// V = V0 + V1 with H0 = -theta d^2 - V0 and H1 = -(1 - theta) d^2 - V1.
/// N = n, or N = 1/n when `reciprocal` is set.
struct Splitting {
  double theta = 0.5;
  Potential v0, v1;
  int n = 1;
  bool reciprocal = false;
  double p0 = 0.5;
  double p1 = 1.5;

  double big_n() const { return reciprocal ? 1.0 / n : static_cast<double>(n); }
};

/// a_k = E_s(k)(H0), b_k = E_l(k)(H1) for k = 1..k_max, with
/// s(k) = 1 + floor(k/(N+1)) and l(k) = N floor(k/(N+1)) + (k mod (N+1)).
/// Missing eigenvalues count as 0. Index vectors are 1-based.
struct InterleavedSequences {
  std::vector<double> a, b;
  std::vector<int> s_index, l_index;
};

int interleave_s(int k, int n);
int interleave_l(int k, int n);

InterleavedSequences build_interleaving(const std::vector<double>& spec0, const std::vector<double>& spec1, int n,
                                        int k_max, bool reciprocal = false);
InterleavedSequences build_interleaving(const Spectrum& spec0, const Spectrum& spec1, int n, int k_max,
                                        bool reciprocal = false);

/// Eigenvalues of -c d^2 - W: c times those of -d^2 - W/c.
Spectrum scaled_kinetic_spectrum(const Potential& w, double c, const Tolerance& tol);

struct KyFanReport {
  std::vector<double> e;          // E_k(H), 0 beyond the spectrum
  std::vector<double> allowance;  // certified error per k
  InterleavedSequences seq;
  std::vector<bool> holds;        // |E_k(H)| <= |a_k| + |b_k| within allowance
  double sum_a = 0.0, sum_b = 0.0;          // sum |a_k|^p0, sum |b_k|^p1 over k <= k_max
  double count_a = 0.0, count_b = 0.0;      // (1+N) sum |E_n(H0)|^p0, (1+1/N) sum |E_m(H1)|^p1
  double lt_a = 0.0, lt_b = 0.0;            // the same after the Lieb-Thirring step
  bool counting_holds = false;

  bool pass() const;
};

/// Checks the splitting inequality and the counting bounds for k <= k_max.
KyFanReport verify_splitting(const Potential& v, const Splitting& split, int k_max,
                             const Tolerance& tol = {1e-8, 1e-8, 200});

}  // namespace lt

#endif  // LT_KYFAN_HPP
