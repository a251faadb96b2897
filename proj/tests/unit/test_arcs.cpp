#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "widom/arcs.hpp"
#include "widom/error.hpp"

using namespace widom;
using std::numbers::pi;

namespace {
const ExteriorMap kDisk = to_map(Disk{1.0});
const ExteriorMap kEllipse = to_map(Ellipse{2.0, 1.0});
const ExteriorMap kHypo = to_map(Hypocycloid{3, 0.25});
}  // namespace

TEST_CASE("disk breakpoints") {
  const ArcSystem arcs = build_arcs(kDisk, 8, 2, pi);
  CHECK(arcs.s() == doctest::Approx(pi / 4).epsilon(1e-15));
  for (int j = 0; j < 8; ++j) {
    CHECK(std::abs(arcs.breakpoint(j) - std::polar(1.0 + pi / 4, 2 * pi * j / 8)) <= 1e-14);
  }
  CHECK(arcs.breakpoint(8) == arcs.breakpoint(0));
  CHECK_FALSE(arcs.strict());
}

TEST_CASE("strict flag") {
  const ArcSystem a = build_arcs(kEllipse, 3017, 2, kStrictC);
  CHECK(a.m0() == 3016);
  CHECK(a.strict());
  const ArcSystem b = build_arcs(kEllipse, 3016, 2, kStrictC);
  CHECK_FALSE(b.strict());
  CHECK(build_arcs(kEllipse, 4525, 3, kStrictC).m0() == 4524);
}

TEST_CASE("arc parameters are validated") {
  CHECK_THROWS_AS(build_arcs(kDisk, 4, 2, pi), Error);  // s = pi/2 > 1
  CHECK_THROWS_AS(build_arcs(kDisk, 1, 2, 0.1), Error);
  CHECK_THROWS_AS(build_arcs(kDisk, 16, 1, 0.1), Error);
  CHECK_THROWS_AS(build_arcs(kDisk, 16, 2, -1.0), Error);
  try {
    build_arcs(kDisk, 2000, 2, kStrictC);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("level parameter out of range", 0) == 0);
  }
}

TEST_CASE("disk moments match the binomial closed form") {
  const int m = 16;
  const ArcSystem arcs = build_arcs(kDisk, m, 3, pi / 4);
  for (int j = 0; j < m; ++j) {
    for (int l = 1; l <= 3; ++l) {
      const cplx expect = oracle::disk_moment(m, arcs.s(), j, l);
      CHECK(std::abs(arc_moments(arcs, j, l) - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
    }
  }
  for (int l = 1; l <= 3; ++l) {
    CHECK(std::abs(arc_moments(arcs, 3, l)) == doctest::Approx(std::abs(arc_moments(arcs, 11, l))).epsilon(1e-12));
  }
}

TEST_CASE("moment row agrees with single moments") {
  const ArcSystem arcs = build_arcs(kHypo, 40, 3, 1.0);
  const auto row = arc_moment_row(arcs, 7, 3);
  for (int l = 1; l <= 3; ++l) CHECK(std::abs(row[l - 1] - arc_moments(arcs, 7, l)) <= 1e-15);
}

TEST_CASE("quadrature self-convergence: order 32 vs 64") {
  for (const auto& map : {kEllipse, kHypo}) {
    const ArcSystem a = build_arcs(map, 64, 2, 4 * pi, 32);
    const ArcSystem b = build_arcs(map, 64, 2, 4 * pi, 64);
    for (int j = 0; j < 64; j += 5) {
      const double d = arc_diameter(a, j);
      for (int l = 1; l <= 2; ++l) {
        CHECK(std::abs(arc_moments(a, j, l) - arc_moments(b, j, l)) <= 1e-12 * std::pow(d, l));
      }
    }
  }
}

TEST_CASE("moment bound |m_{j,l}| <= d_j^l") {
  for (const auto& map : {kDisk, kEllipse, kHypo}) {
    const ArcSystem arcs = build_arcs(map, 64, 3, pi);
    const MomentTable table = moment_table(arcs);
    REQUIRE(table.rows.size() == 64);
    for (const auto& row : table.rows) {
      for (int l = 1; l <= 3; ++l) CHECK(std::abs(row.moments[l - 1]) <= std::pow(row.diam, l) * (1 + 1e-12));
    }
  }
}

TEST_CASE("arc masses") {
  const ArcSystem arcs = build_arcs(kEllipse, 8, 2, 0.1);
  CHECK(arc_mass(arcs, 0) == 0.125);
  double total = 0.0;
  for (int j = 0; j < 8; ++j) total += arc_mass(arcs, j);
  CHECK(total == 1.0);
  CHECK(arc_mass(build_arcs(kHypo, 8, 2, 0.1), 3) == 0.125);
}

TEST_CASE("quadrature weights per arc sum to 2 pi / m") {
  const ArcSystem arcs = build_arcs(kEllipse, 10, 2, 0.5);
  std::vector<double> t, w;
  arcs.quadrature(4, t, w);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(2 * pi / 10).epsilon(1e-14));
  for (double x : t) {
    CHECK(x > arcs.theta_begin(4));
    CHECK(x < arcs.theta_end(4));
  }
}

TEST_CASE("disk arc geometry") {
  const ArcSystem arcs = build_arcs(kDisk, 8, 2, pi);
  const double r = 1.0 + pi / 4;
  for (int j : {0, 5}) {
    const ArcGeometry g = arc_geometry(arcs, j);
    CHECK(g.dist == doctest::Approx(pi / 4).epsilon(1e-9));
    CHECK(g.chord == doctest::Approx(r * std::abs(std::polar(1.0, pi / 4) - 1.0)).epsilon(1e-14));
    CHECK(g.length == doctest::Approx(r * pi / 4).epsilon(1e-13));
    CHECK(g.diam == doctest::Approx(g.chord).epsilon(1e-13));
  }
}

TEST_CASE("chord <= diam <= length on every arc") {
  for (const auto& map : {kDisk, kEllipse, kHypo}) {
    const ArcSystem arcs = build_arcs(map, 48, 2, 2.0);
    const BoundaryDistance bd(map);
    for (int j = 0; j < 48; ++j) {
      const ArcGeometry g = arc_geometry(arcs, j, bd);
      CHECK(g.chord <= g.diam * (1 + 1e-12));
      CHECK(g.diam <= g.length * (1 + 1e-12));
      CHECK(g.dist > 0.0);
    }
  }
}

TEST_CASE("arc lengths add up to the level-curve length") {
  for (const auto& map : {kEllipse, kHypo}) {
    const ArcSystem arcs = build_arcs(map, 50, 2, 3.0);
    double total = 0.0;
    for (int j = 0; j < 50; ++j) total += arc_geometry(arcs, j, 1024).length;
    CHECK(total == doctest::Approx(level_curve_length(map, arcs.s())).epsilon(1e-9));
  }
}

TEST_CASE("translation shifts breakpoints and keeps moments") {
  const cplx t(3.0, -1.5);
  const ExteriorMap shifted = transform(kHypo, 1.0, t);
  const ArcSystem a = build_arcs(kHypo, 32, 2, 1.0);
  const ArcSystem b = build_arcs(shifted, 32, 2, 1.0);
  for (int j = 0; j < 32; ++j) {
    CHECK(std::abs(b.breakpoint(j) - (a.breakpoint(j) + t)) <= 1e-13);
    for (int l = 1; l <= 2; ++l) CHECK(std::abs(arc_moments(a, j, l) - arc_moments(b, j, l)) <= 1e-12);
  }
}

TEST_CASE("moment csv") {
  const ArcSystem arcs = build_arcs(kDisk, 4, 2, 0.25);
  std::ostringstream out;
  write_moment_csv(out, moment_table(arcs));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "j,l,re,im,d_j");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  CHECK(out.str().find("\n1,1,") != std::string::npos);
}
