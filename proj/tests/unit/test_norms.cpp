#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "widom/construct.hpp"
#include "widom/error.hpp"
#include "widom/norms.hpp"

using namespace widom;
using std::numbers::pi;

namespace {
const ExteriorMap kDisk = to_map(Disk{1.0});
const ExteriorMap kEllipse = to_map(Ellipse{2.0, 1.0});
const ExteriorMap kHypo = to_map(Hypocycloid{3, 0.25});

std::vector<cplx> roots_of_unity(int n, double r) {
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(r, 2 * pi * k / n);
  return z;
}
}  // namespace

TEST_CASE("log_abs_poly") {
  const std::vector<cplx> zero = {0.0};
  CHECK(log_abs_poly(zero, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<cplx> pm = {1.0, -1.0};
  CHECK(std::abs(log_abs_poly(pm, 0.0)) <= 1e-15);
  CHECK(log_abs_poly(pm, 1.0) == -INFINITY);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> z(20);
    for (auto& x : z) x = oracle::random_in_disk(rng, 2.0);
    const cplx at = oracle::random_in_disk(rng, 3.0);
    CHECK(log_abs_poly(z, at) == doctest::Approx(std::log(oracle::abs_product(z, at))).epsilon(1e-10));
  }
}

TEST_CASE("log_abs_poly survives huge degrees") {
  std::vector<cplx> z(6000, cplx(0.0, 0.0));
  CHECK(log_abs_poly(z, 10.0) == doctest::Approx(6000 * std::log(10.0)).epsilon(1e-13));
  CHECK(log_abs_poly(z, 1e-3) == doctest::Approx(6000 * std::log(1e-3)).epsilon(1e-13));
}

TEST_CASE("sup norm of z^n - r^n on a disk of radius r") {
  for (int n : {1, 5, 40}) {
    const double r = 1.7;
    const ExteriorMap d = to_map(Disk{r});
    const SupNorm s = sup_norm_log(roots_of_unity(n, r), d, 8 * n < 256 ? 256 : 8 * n);
    CHECK(s.log_sup == doctest::Approx(n * std::log(r) + std::log(2.0)).epsilon(1e-12));
  }
  const SupNorm s0 = sup_norm_log(std::vector<cplx>(12, 0.0), kDisk, 256);
  CHECK(std::abs(s0.log_sup) <= 12 * 4e-16);
}

TEST_CASE("widom factors on the disk") {
  const std::vector<cplx> zn(10, 0.0);
  CHECK(widom_factor(zn, kDisk).widom == doctest::Approx(1.0).epsilon(1e-14));
  const ExteriorMap d = to_map(Disk{0.6});
  CHECK(widom_factor(roots_of_unity(30, 0.6), d).widom == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("widom factor of the scaled first-kind Chebyshev polynomial on the ellipse") {
  // zeros of T_n(z/f) scaled by the focal distance f
  const double f = std::sqrt(3.0);
  for (int n : {2, 5, 12}) {
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) z[k] = f * std::cos(pi * (k + 0.5) / n);
    const WidomReport rep = widom_factor(z, kEllipse);
    CHECK(rep.widom == doctest::Approx(oracle::ellipse_chebyshev_norm(2, 1, n) / std::pow(1.5, n)).epsilon(1e-10));
  }
}

TEST_CASE("doubling the grid changes log_sup by at most 1e-9") {
  for (const auto& map : {kEllipse, kHypo}) {
    const ZeroMultiset z = build_shrunk(map, 2, 64, 2.0);
    const int n = z.degree();
    const double a = widom_factor(z, 8 * n).log_sup;
    const double b = widom_factor(z, 16 * n).log_sup;
    CHECK(std::abs(a - b) <= 1e-9);
    CHECK(b >= a - 1e-12);
  }
}

TEST_CASE("widom report fields") {
  const ZeroMultiset z = build_shrunk(kEllipse, 2, 64, 4 * pi);
  const WidomReport rep = widom_factor(z);
  CHECK(rep.n == 128);
  CHECK(rep.m == 64);
  CHECK(rep.q == 2);
  CHECK(rep.mode == "shrunk");
  CHECK(rep.grid_size == 1024);
  CHECK(rep.log_cap_n == doctest::Approx(128 * std::log(1.5)));
  CHECK(rep.widom == doctest::Approx(std::exp(rep.log_widom())));
  CHECK(rep.widom >= 1.0 - 1e-9);
  CHECK(std::isfinite(rep.widom));
}

TEST_CASE("constructed zeros on K give factors >= 1") {
  for (const auto& map : {kDisk, kEllipse}) {
    for (auto mode : {PlacementMode::shrunk, PlacementMode::projected}) {
      const ZeroMultiset z = build(mode, map, 2, 64, 2.0);
      CHECK(widom_factor(z).widom >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("bernstein-walsh") {
  const std::vector<cplx> zn(8, 0.0);
  const CheckRecord eq = bernstein_walsh_check(zn, kDisk, 0.3, 256);
  CHECK(eq.pass);
  CHECK(std::abs(eq.slack) <= 1e-12);
  CHECK(std::abs(bernstein_walsh_check(zn, kDisk, 0.0, 256).slack) <= 1e-12);
  const ZeroMultiset z = build_outside(kHypo, 2, 64, 2.0);
  CHECK(bernstein_walsh_check(z.zeros, kHypo, 0.25, 1024).pass);
}

TEST_CASE("submultiplicativity") {
  const ZeroMultiset a = build_shrunk(kEllipse, 2, 32, 1.0);
  const ZeroMultiset b = build_projected(kEllipse, 2, 48, 1.0);
  const double wa = widom_factor(a).widom, wb = widom_factor(b).widom;
  CHECK(widom_factor(concat(a, b)).widom <= wa * wb * (1 + 1e-9));
}

TEST_CASE("green integral on the disk against the trapezoid rule") {
  const BoundaryDistance bd(kDisk);
  for (double s : {0.3, 1e-2, 1e-3}) {
    for (double t : {0.0, 1.3}) {
      const cplx z = std::polar(1.0, t);
      const double ref = oracle::disk_green_integral(z, s, 2, 400000);
      CHECK(green_integral(kDisk, z, s, 2, 16, bd) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("green integral is rotation invariant") {
  const double alpha = 0.9;
  const ExteriorMap rot = transform(kHypo, std::polar(1.0, alpha), 0.0);
  const BoundaryDistance a(kHypo), b(rot);
  for (double t : {0.2, 2.0}) {
    const cplx z = psi(kHypo, std::polar(1.0, t));
    CHECK(green_integral(kHypo, z, 0.05, 2, 16, a) ==
          doctest::Approx(green_integral(rot, z * std::polar(1.0, alpha), 0.05, 2, 16, b)).epsilon(1e-7));
  }
}

TEST_CASE("green integral uniformity on the ellipse") {
  const BoundaryDistance bd(kEllipse);
  for (double s : {1e-2, 1e-3}) {
    std::vector<double> v;
    for (int k = 0; k < 64; ++k) v.push_back(green_integral(kEllipse, psi(kEllipse, std::polar(1.0, 2 * pi * k / 64)), s, 2, 16, bd));
    std::sort(v.begin(), v.end());
    CHECK(v.back() <= 10.0 * 0.5 * (v[31] + v[32]));
  }
}
