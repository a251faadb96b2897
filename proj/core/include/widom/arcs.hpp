#pragma once

#include <iosfwd>
#include <numbers>
#include <vector>

#include "widom/domain.hpp"

namespace widom {

/// The constant c = 480 pi under which the arc geometry chain is guaranteed.
inline constexpr double kStrictC = 480.0 * std::numbers::pi;

/// Partition of the level curve K_s, s = c q / m, into m arcs
/// I_j = psi({(1+s) e^{i theta} : 2 pi j / m <= theta <= 2 pi (j+1) / m}),
/// j = 0..m-1 (zero-based throughout the library; files use j+1).
class ArcSystem {
 public:
  ArcSystem(ExteriorMap map, int m, int q, double c, int quad_order);

  const ExteriorMap& map() const noexcept { return map_; }
  int m() const noexcept { return m_; }
  int q() const noexcept { return q_; }
  double c() const noexcept { return c_; }
  double s() const noexcept { return c_ * q_ / m_; }
  int quad_order() const noexcept { return quad_order_; }

  /// m > floor(c q) + 1 with c equal to 480 pi.
  bool strict() const noexcept { return strict_; }
  /// floor(c q) + 1.
  long m0() const noexcept;

  double theta_begin(int j) const noexcept;
  double theta_end(int j) const noexcept { return theta_begin(j + 1); }

  /// xi_j; breakpoint(m) wraps to breakpoint(0).
  cplx breakpoint(int j) const noexcept { return breakpoints_[((j % m_) + m_) % m_]; }
  const std::vector<cplx>& breakpoints() const noexcept { return breakpoints_; }

  /// Gauss-Legendre angles and weights (summing to 2 pi / m) on arc j.
  void quadrature(int j, std::vector<double>& theta, std::vector<double>& weight) const;

 private:
  ExteriorMap map_;
  int m_, q_;
  double c_;
  int quad_order_;
  bool strict_;
  std::vector<cplx> breakpoints_;
};

ArcSystem build_arcs(const ExteriorMap& map, int m, int q, double c = kStrictC, int quad_order = 32);

/// m_{j,l} = (m / 2 pi) * integral over arc j of (psi((1+s)e^{i theta}) - xi_j)^l d theta,
/// i.e. the l-th moment about xi_j of the equilibrium measure of K_s
/// restricted to I_j and normalized by its mass 1/m.
cplx arc_moments(const ArcSystem& arcs, int j, int l);

/// All moments m_{j,1..upto} of arc j from one set of quadrature nodes.
std::vector<cplx> arc_moment_row(const ArcSystem& arcs, int j, int upto);

/// Equilibrium mass of an arc: exactly 1/m.
double arc_mass(const ArcSystem& arcs, int j);

struct ArcGeometry {
  double dist = 0.0;    // dist(I_j, K)
  double chord = 0.0;   // |xi_{j+1} - xi_j|
  double diam = 0.0;    // diam I_j over 64 samples
  double length = 0.0;  // |I_j|
};

ArcGeometry arc_geometry(const ArcSystem& arcs, int j, const BoundaryDistance& dist);
ArcGeometry arc_geometry(const ArcSystem& arcs, int j, int boundary_n = 16384);

/// Diameter of arc j from 64 equally spaced samples, endpoints included.
double arc_diameter(const ArcSystem& arcs, int j);

/// Length of the whole level curve K_s from a single Gauss-Legendre pass.
double level_curve_length(const ExteriorMap& map, double s, int order = 512);

struct MomentRow {
  std::vector<cplx> moments;  // m_{j,1..q}
  double diam = 0.0;          // d_j
};

struct MomentTable {
  std::vector<MomentRow> rows;
};

MomentTable moment_table(const ArcSystem& arcs);

/// CSV with header "j,l,re,im,d_j"; j and l are one-based.
void write_moment_csv(std::ostream& out, const MomentTable& table);

}  // namespace widom
