#pragma once

#include <span>
#include <string>

#include "widom/construct.hpp"
#include "widom/domain.hpp"

namespace widom {

/// sum_zeta log |z - zeta|; -inf when z hits a zero.
double log_abs_poly(std::span<const cplx> zeros, cplx z);

struct SupNorm {
  double log_sup = 0.0;
  double argmax_theta = 0.0;
  int grid = 0;
};

/// log of sup |p| over the level curve psi((1+s) e^{i theta}) (s = 0 is L,
/// which carries the sup over K by the maximum principle). Coarse uniform
/// theta scan, then golden-section refinement of the 16 largest local
/// maxima until the bracket is below refine_tol. Equal maxima resolve to
/// the smallest theta.
SupNorm sup_norm_log_on_level(std::span<const cplx> zeros, const ExteriorMap& map, double s,
                              int grid, double refine_tol = 1e-10);

inline SupNorm sup_norm_log(std::span<const cplx> zeros, const ExteriorMap& map, int grid,
                            double refine_tol = 1e-10) {
  return sup_norm_log_on_level(zeros, map, 0.0, grid, refine_tol);
}

struct WidomReport {
  int n = 0;
  int m = 0;
  int q = 0;
  double c = 0.0;
  double s = 0.0;
  std::string mode;
  double log_sup = 0.0;
  double log_cap_n = 0.0;
  double widom = 0.0;  // exp(log_sup - log_cap_n); may overflow to inf
  double argmax_theta = 0.0;
  int grid_size = 0;
  double refinement_tol = 0.0;

  double log_widom() const noexcept { return log_sup - log_cap_n; }
};

/// Widom factor ||p||_K / cap(K)^n of the multiset's polynomial. grid = 0
/// selects 8 n.
WidomReport widom_factor(const ZeroMultiset& zeros, int grid = 0, double refine_tol = 1e-10);

/// Same for a bare zero list on a given domain (mode "custom").
WidomReport widom_factor(std::span<const cplx> zeros, const ExteriorMap& map, int grid = 0,
                         double refine_tol = 1e-10);

struct CheckRecord {
  bool pass = false;
  double slack = 0.0;  // signed; negative means violated
  std::string details;
};

/// ||p||_{K_s} <= (1+s)^n ||p||_K, checked in log form with 1e-9 slack.
CheckRecord bernstein_walsh_check(std::span<const cplx> zeros, const ExteriorMap& map, double s,
                                  int grid = 0);

/// integral over K_s of dist(zeta, K)^q / |zeta - z|^{q+1} |d zeta| for z
/// on L, by adaptive Gauss-Legendre panels split at the Green angle of z.
/// Throws ErrorKind::convergence past 20 refinement levels.
double green_integral(const ExteriorMap& map, cplx z, double s, int q, int quad_order,
                      const BoundaryDistance& dist);
double green_integral(const ExteriorMap& map, cplx z, double s, int q, int quad_order = 16);

}  // namespace widom
