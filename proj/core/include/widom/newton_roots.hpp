#pragma once

#include <span>
#include <vector>

#include "widom/domain.hpp"

namespace widom {

/// Prescribed power sums p_l = sum_k r_k^l, l = 1..q, of q unknown roots.
/// `scale` is the diameter d of the generating arc, used by the bounds.
struct PowerSumSpec {
  std::vector<cplx> sums;
  double scale = 0.0;

  int q() const noexcept { return static_cast<int>(sums.size()); }
};

/// Monic polynomial z^q + a_{q-1} z^{q-1} + ... + a_0 and its roots.
/// coeffs[l-1] holds a_{q-l}.
struct RootBundle {
  std::vector<cplx> coeffs;
  std::vector<cplx> roots;
  double residual = 0.0;  // max_k |P(r_k)|
};

/// Newton's identities
///   p_l + a_{q-1} p_{l-1} + ... + a_{q-l+1} p_1 = -l a_{q-l},  l = 1..q,
/// solved for a_{q-l} in increasing l.
std::vector<cplx> power_sums_to_coeffs(std::span<const cplx> sums);

/// All roots of the monic polynomial with the given coeffs (a_{q-1} first),
/// by Durand-Kerner from deterministic starts, sorted by (re, im).
/// Throws RootFindingStalled after 500 iterations without convergence.
std::vector<cplx> find_roots(std::span<const cplx> coeffs);

/// Value of the monic polynomial at z.
cplx eval_monic(std::span<const cplx> coeffs, cplx z);

/// Coefficients, roots, and residual for a power-sum spec.
RootBundle solve_power_sums(const PowerSumSpec& spec);

/// Power sums sum_k r_k^l, l = 1..upto.
std::vector<cplx> power_sums(std::span<const cplx> roots, int upto);

struct BoundsRecord {
  // slack = bound - measured value; pass iff every slack >= -1e-9 * bound
  std::vector<double> coeff_slack;  // q^l d^l - |a_{q-l}|, l = 1..q
  std::vector<double> root_slack;   // 2 q d - |r_k|
  double min_coeff_slack_rel = 0.0;  // min slack / max(bound, tiny)
  double min_root_slack_rel = 0.0;
  bool coeff_pass = true;
  bool root_pass = true;

  bool pass() const noexcept { return coeff_pass && root_pass; }
};

/// |a_{q-l}| <= q^l d^l and |r_k| <= 2 q d.
BoundsRecord check_bounds(const RootBundle& bundle, int q, double d);

}  // namespace widom
