#include "widom/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "widom/error.hpp"
#include "widom/format.hpp"
#include "widom/parallel.hpp"
#include "widom/quadrature.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_strict_c(double c) { return std::abs(c - kStrictC) <= 1e-12 * kStrictC; }

}  // namespace

ArcSystem::ArcSystem(ExteriorMap map, int m, int q, double c, int quad_order)
    : map_(std::move(map)), m_(m), q_(q), c_(c), quad_order_(quad_order) {
  if (m < 2) throw Error(ErrorKind::parameter, "build_arcs: m must be >= 2");
  if (q < 2) throw Error(ErrorKind::parameter, "build_arcs: q must be >= 2");
  if (!(c > 0.0)) throw Error(ErrorKind::parameter, "build_arcs: c must be positive");
  if (quad_order < 1) throw Error(ErrorKind::parameter, "build_arcs: quad_order must be >= 1");
  if (!(s() > 0.0 && s() < 1.0)) {
    throw Error(ErrorKind::parameter,
                "level parameter out of range: s = c q / m = " + std::to_string(s()));
  }
  strict_ = is_strict_c(c) && m > m0();
  breakpoints_.resize(m);
  for (int j = 0; j < m; ++j) breakpoints_[j] = level_point(map_, s(), theta_begin(j));
}

long ArcSystem::m0() const noexcept {
  return static_cast<long>(std::floor(c_ * q_)) + 1;
}

double ArcSystem::theta_begin(int j) const noexcept { return kTwoPi * j / m_; }

void ArcSystem::quadrature(int j, std::vector<double>& theta, std::vector<double>& weight) const {
  gauss_legendre_interval(quad_order_, theta_begin(j), theta_end(j), theta, weight);
}

ArcSystem build_arcs(const ExteriorMap& map, int m, int q, double c, int quad_order) {
  return ArcSystem(map, m, q, c, quad_order);
}

std::vector<cplx> arc_moment_row(const ArcSystem& arcs, int j, int upto) {
  if (j < 0 || j >= arcs.m()) throw Error(ErrorKind::parameter, "arc index out of range");
  if (upto < 1) throw Error(ErrorKind::parameter, "moment order must be >= 1");
  std::vector<double> theta, weight;
  arcs.quadrature(j, theta, weight);
  const cplx xi = arcs.breakpoint(j);
  std::vector<cplx> row(upto, cplx(0.0, 0.0));
  for (std::size_t t = 0; t < theta.size(); ++t) {
    const cplx d = level_point(arcs.map(), arcs.s(), theta[t]) - xi;
    cplx power = d;
    for (int l = 0; l < upto; ++l) {
      row[l] += weight[t] * power;
      power *= d;
    }
  }
  const double norm = arcs.m() / kTwoPi;
  for (cplx& v : row) v *= norm;
  return row;
}

cplx arc_moments(const ArcSystem& arcs, int j, int l) {
  if (l < 1) throw Error(ErrorKind::parameter, "moment order must be >= 1");
  return arc_moment_row(arcs, j, l).back();
}

double arc_mass(const ArcSystem& arcs, int j) {
  if (j < 0 || j >= arcs.m()) throw Error(ErrorKind::parameter, "arc index out of range");
  return 1.0 / arcs.m();
}

double arc_diameter(const ArcSystem& arcs, int j) {
  constexpr int kSamples = 64;
  std::vector<cplx> pts(kSamples);
  const double a = arcs.theta_begin(j), b = arcs.theta_end(j);
  for (int k = 0; k < kSamples; ++k) {
    pts[k] = level_point(arcs.map(), arcs.s(), a + (b - a) * k / (kSamples - 1));
  }
  double d = 0.0;
  for (int u = 0; u < kSamples; ++u) {
    for (int v = u + 1; v < kSamples; ++v) d = std::max(d, std::abs(pts[u] - pts[v]));
  }
  return d;
}

ArcGeometry arc_geometry(const ArcSystem& arcs, int j, const BoundaryDistance& dist) {
  if (j < 0 || j >= arcs.m()) throw Error(ErrorKind::parameter, "arc index out of range");
  ArcGeometry g;
  std::vector<double> theta, weight;
  arcs.quadrature(j, theta, weight);
  const double r = 1.0 + arcs.s();
  g.dist = std::min(dist(arcs.breakpoint(j)), dist(arcs.breakpoint(j + 1)));
  for (std::size_t t = 0; t < theta.size(); ++t) {
    cplx value, deriv;
    psi_and_derivative(arcs.map(), std::polar(r, theta[t]), value, deriv);
    g.dist = std::min(g.dist, dist(value));
    g.length += weight[t] * std::abs(deriv) * r;
  }
  g.chord = std::abs(arcs.breakpoint(j + 1) - arcs.breakpoint(j));
  g.diam = arc_diameter(arcs, j);
  return g;
}

ArcGeometry arc_geometry(const ArcSystem& arcs, int j, int boundary_n) {
  return arc_geometry(arcs, j, BoundaryDistance(arcs.map(), boundary_n));
}

double level_curve_length(const ExteriorMap& map, double s, int order) {
  std::vector<double> theta, weight;
  gauss_legendre_interval(order, 0.0, kTwoPi, theta, weight);
  const double r = 1.0 + s;
  double total = 0.0;
  for (std::size_t t = 0; t < theta.size(); ++t) {
    total += weight[t] * std::abs(psi_prime(map, std::polar(r, theta[t]))) * r;
  }
  return total;
}

MomentTable moment_table(const ArcSystem& arcs) {
  MomentTable table;
  table.rows.resize(arcs.m());
  parallel_for(static_cast<std::size_t>(arcs.m()), [&](std::size_t j) {
    table.rows[j].moments = arc_moment_row(arcs, static_cast<int>(j), arcs.q());
    table.rows[j].diam = arc_diameter(arcs, static_cast<int>(j));
  });
  return table;
}

void write_moment_csv(std::ostream& out, const MomentTable& table) {
  out << "j,l,re,im,d_j\n";
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    const MomentRow& row = table.rows[j];
    for (std::size_t l = 0; l < row.moments.size(); ++l) {
      out << j + 1 << ',' << l + 1 << ',' << fmt_num(row.moments[l].real()) << ','
          << fmt_num(row.moments[l].imag()) << ',' << fmt_num(row.diam) << '\n';
    }
  }
}

}  // namespace widom
