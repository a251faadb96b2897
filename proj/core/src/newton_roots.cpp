#include "widom/newton_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "widom/error.hpp"

namespace widom {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kPassTol = 1e-9;

bool lex_less(const cplx& a, const cplx& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

}  // namespace

std::vector<cplx> power_sums_to_coeffs(std::span<const cplx> sums) {
  const std::size_t q = sums.size();
  std::vector<cplx> b(q + 1, cplx(0.0, 0.0));  // b[l] = a_{q-l}, b[0] = 1
  b[0] = 1.0;
  for (std::size_t l = 1; l <= q; ++l) {
    cplx acc = sums[l - 1];
    for (std::size_t i = 1; i < l; ++i) acc += b[i] * sums[l - i - 1];
    b[l] = -acc / static_cast<double>(l);
  }
  return {b.begin() + 1, b.end()};
}

cplx eval_monic(std::span<const cplx> coeffs, cplx z) {
  cplx v(1.0, 0.0);
  for (const cplx& a : coeffs) v = v * z + a;
  return v;
}

namespace {

// Every iterate is an exact root of a polynomial whose coefficients differ
// from the given ones by a few ulps. Clustered roots stall there with
// movements above the absolute threshold.
bool at_roundoff_floor(std::span<const cplx> coeffs, std::span<const cplx> z) {
  constexpr double kUlps = 16.0 * std::numeric_limits<double>::epsilon();
  for (const cplx& x : z) {
    const double ax = std::abs(x);
    double bound = 1.0;
    for (const cplx& a : coeffs) bound = bound * ax + std::abs(a);
    if (std::abs(eval_monic(coeffs, x)) > kUlps * bound) return false;
  }
  return true;
}

}  // namespace

std::vector<cplx> find_roots(std::span<const cplx> coeffs) {
  const std::size_t q = coeffs.size();
  if (q == 0) return {};
  // Work in u = z / R with R = max_l |a_{q-l}|^{1/l}, so every root has
  // modulus <= 2 and tolerances are relative to the root scale.
  double radius = 0.0;
  for (std::size_t l = 1; l <= q; ++l) {
    radius = std::max(radius, std::pow(std::abs(coeffs[l - 1]), 1.0 / static_cast<double>(l)));
  }
  if (radius == 0.0) return std::vector<cplx>(q, cplx(0.0, 0.0));

  std::vector<cplx> scaled(q);
  double rl = 1.0;
  for (std::size_t l = 1; l <= q; ++l) {
    rl *= radius;
    scaled[l - 1] = coeffs[l - 1] / rl;
  }
  if (q == 1) return {-coeffs[0]};

  double start_radius = 0.0;
  for (std::size_t l = 1; l <= q; ++l) {
    start_radius = std::max(start_radius, std::pow(std::abs(scaled[l - 1]), 1.0 / static_cast<double>(l)));
  }
  start_radius += 1.0;
  const cplx seed(0.4, 0.9);
  std::vector<cplx> z(q);
  cplx power(1.0, 0.0);
  for (std::size_t k = 0; k < q; ++k) {
    z[k] = power * start_radius;
    power *= seed;
  }

  double movement = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    movement = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
      cplx denom(1.0, 0.0);
      for (std::size_t i = 0; i < q; ++i) {
        if (i != k) denom *= z[k] - z[i];
      }
      if (denom == cplx(0.0, 0.0)) denom = cplx(1e-300, 0.0);
      const cplx step = eval_monic(scaled, z[k]) / denom;
      z[k] -= step;
      movement = std::max(movement, std::abs(step));
    }
    if (movement <= 1e-14 || at_roundoff_floor(scaled, z)) {
      converged = true;
      break;
    }
  }
  for (cplx& v : z) v *= radius;
  if (!converged) throw RootFindingStalled(z, movement * radius);
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

std::vector<cplx> power_sums(std::span<const cplx> roots, int upto) {
  std::vector<cplx> p(upto, cplx(0.0, 0.0));
  for (const cplx& r : roots) {
    cplx power = r;
    for (int l = 0; l < upto; ++l) {
      p[l] += power;
      power *= r;
    }
  }
  return p;
}

RootBundle solve_power_sums(const PowerSumSpec& spec) {
  RootBundle bundle;
  bundle.coeffs = power_sums_to_coeffs(spec.sums);
  bundle.roots = find_roots(bundle.coeffs);
  for (const cplx& r : bundle.roots) {
    bundle.residual = std::max(bundle.residual, std::abs(eval_monic(bundle.coeffs, r)));
  }
  return bundle;
}

BoundsRecord check_bounds(const RootBundle& bundle, int q, double d) {
  BoundsRecord rec;
  rec.min_coeff_slack_rel = std::numeric_limits<double>::infinity();
  rec.min_root_slack_rel = std::numeric_limits<double>::infinity();
  double bound = 1.0;
  for (std::size_t l = 1; l <= bundle.coeffs.size(); ++l) {
    bound *= q * d;
    const double slack = bound - std::abs(bundle.coeffs[l - 1]);
    rec.coeff_slack.push_back(slack);
    const double ref = std::max(bound, std::numeric_limits<double>::min());
    rec.min_coeff_slack_rel = std::min(rec.min_coeff_slack_rel, slack / ref);
    if (slack < -kPassTol * bound) rec.coeff_pass = false;
  }
  const double root_bound = 2.0 * q * d;
  for (const cplx& r : bundle.roots) {
    const double slack = root_bound - std::abs(r);
    rec.root_slack.push_back(slack);
    const double ref = std::max(root_bound, std::numeric_limits<double>::min());
    rec.min_root_slack_rel = std::min(rec.min_root_slack_rel, slack / ref);
    if (slack < -kPassTol * root_bound) rec.root_pass = false;
  }
  return rec;
}

}  // namespace widom
