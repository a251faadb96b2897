#include "widom/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "widom/error.hpp"
#include "widom/format.hpp"
#include "widom/quadrature.hpp"
#include "widom/scan.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr int kBlock = 8;
constexpr int kMaxDepth = 20;

double block_log(std::span<const cplx> zeros, cplx z, std::size_t lo, std::size_t hi) {
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double d = std::abs(z - zeros[i]);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return 2.0 * acc;
}

int default_grid(int n) { return std::max(8 * n, 256); }

}  // namespace

double log_abs_poly(std::span<const cplx> zeros, cplx z) {
  // Products of squared moduli in blocks, renormalized with frexp, so that
  // log is called once per block instead of once per zero.
  const std::size_t n = zeros.size();
  double mant = 1.0;
  long exponent = 0;
  double extra = 0.0;  // log |.|^2 of blocks that left the safe range
  for (std::size_t i = 0; i < n;) {
    const std::size_t end = std::min(n, i + kBlock);
    double prod = 1.0;
    for (std::size_t k = i; k < end; ++k) prod *= std::norm(z - zeros[k]);
    if (!(prod > 0.0) || !std::isfinite(prod) || prod < 1e-280) {
      const double v = block_log(zeros, z, i, end);
      if (std::isinf(v) && v < 0) return v;
      extra += v;
    } else {
      int e = 0;
      mant = std::frexp(mant * prod, &e);
      exponent += e;
    }
    i = end;
  }
  return 0.5 * (std::log(mant) + exponent * kLn2 + extra);
}

SupNorm sup_norm_log_on_level(std::span<const cplx> zeros, const ExteriorMap& map, double s,
                              int grid, double refine_tol) {
  if (grid < 8) throw Error(ErrorKind::parameter, "sup_norm_log: grid must be >= 8");
  const double r = 1.0 + s;
  const PeriodicMax best = scan_periodic_max(
      [&](double theta) { return log_abs_poly(zeros, psi(map, std::polar(r, theta))); }, grid,
      refine_tol);
  return {best.value, best.theta, grid};
}

WidomReport widom_factor(std::span<const cplx> zeros, const ExteriorMap& map, int grid,
                         double refine_tol) {
  WidomReport rep;
  rep.n = static_cast<int>(zeros.size());
  rep.mode = "custom";
  rep.grid_size = grid > 0 ? grid : default_grid(rep.n);
  rep.refinement_tol = refine_tol;
  const SupNorm sup = sup_norm_log(zeros, map, rep.grid_size, refine_tol);
  rep.log_sup = sup.log_sup;
  rep.argmax_theta = sup.argmax_theta;
  rep.log_cap_n = rep.n * std::log(map.cap);
  rep.widom = std::exp(rep.log_sup - rep.log_cap_n);
  return rep;
}

WidomReport widom_factor(const ZeroMultiset& zeros, int grid, double refine_tol) {
  WidomReport rep = widom_factor(zeros.zeros, zeros.map, grid, refine_tol);
  rep.m = zeros.provenance.m;
  rep.q = zeros.provenance.q;
  rep.c = zeros.provenance.c;
  rep.s = zeros.provenance.s;
  rep.mode = to_string(zeros.mode);
  return rep;
}

CheckRecord bernstein_walsh_check(std::span<const cplx> zeros, const ExteriorMap& map, double s,
                                  int grid) {
  if (!(s >= 0.0)) throw Error(ErrorKind::parameter, "bernstein_walsh_check: s must be >= 0");
  const int n = static_cast<int>(zeros.size());
  if (grid <= 0) grid = default_grid(n);
  const SupNorm on_k = sup_norm_log(zeros, map, grid);
  const SupNorm on_level = s == 0.0 ? on_k : sup_norm_log_on_level(zeros, map, s, grid);
  const double rhs = n * std::log1p(s) + on_k.log_sup;
  CheckRecord rec;
  rec.slack = rhs - on_level.log_sup;
  rec.pass = rec.slack >= -1e-9;
  rec.details = "log sup on K_s = " + fmt_num(on_level.log_sup) + ", n log(1+s) + log sup on K = " +
                fmt_num(rhs);
  return rec;
}

double green_integral(const ExteriorMap& map, cplx z, double s, int q, int quad_order,
                      const BoundaryDistance& dist) {
  if (!(s > 0.0)) throw Error(ErrorKind::parameter, "green_integral: s must be positive");
  const double r = 1.0 + s;
  const double theta_z = std::arg(phi(map, z));
  auto integrand = [&](double theta) {
    cplx value, deriv;
    psi_and_derivative(map, std::polar(r, theta), value, deriv);
    const double d = dist(value);
    const double sep = std::abs(value - z);
    return std::pow(d, q) / std::pow(sep, q + 1) * std::abs(deriv) * r;
  };
  auto panel = [&](double a, double b) {
    std::vector<double> x, w;
    gauss_legendre_interval(quad_order, a, b, x, w);
    double acc = 0.0;
    for (int i = 0; i < quad_order; ++i) acc += w[i] * integrand(x[i]);
    return acc;
  };

  constexpr int kInitialPanels = 8;
  const double width = kTwoPi / kInitialPanels;
  std::vector<double> coarse(kInitialPanels);
  double estimate = 0.0;
  for (int p = 0; p < kInitialPanels; ++p) {
    coarse[p] = panel(theta_z + p * width, theta_z + (p + 1) * width);
    estimate += coarse[p];
  }
  const double tol = 1e-10;
  constexpr double kNoiseFloor = 1e-11;

  // Depth-first bisection; the tolerance share of a panel is its width.
  struct Item {
    double a, b, value;
    int depth;
  };
  double total = 0.0;
  for (int p = kInitialPanels - 1; p >= 0; --p) {
    std::vector<Item> stack{{theta_z + p * width, theta_z + (p + 1) * width, coarse[p], 0}};
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const double mid = 0.5 * (it.a + it.b);
      const double left = panel(it.a, mid);
      const double right = panel(mid, it.b);
      const double refined = left + right;
      // the share of the global tolerance, floored at the evaluation noise
      // of the distance query (the integrand is positive, so the floor adds
      // at most kNoiseFloor * total)
      const double allowed = std::max(tol * std::max(std::abs(estimate), 1e-300) * (it.b - it.a) / kTwoPi,
                                      kNoiseFloor * std::abs(refined));
      if (std::abs(refined - it.value) <= allowed) {
        total += refined;
        continue;
      }
      if (it.depth + 1 > kMaxDepth) {
        throw Error(ErrorKind::convergence, "green_integral: refinement exceeded 20 levels");
      }
      stack.push_back({mid, it.b, right, it.depth + 1});
      stack.push_back({it.a, mid, left, it.depth + 1});
    }
  }
  return total;
}

double green_integral(const ExteriorMap& map, cplx z, double s, int q, int quad_order) {
  return green_integral(map, z, s, q, quad_order, BoundaryDistance(map));
}

}  // namespace widom
