#pragma once

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace widom {

using cplx = std::complex<double>;

/// A quasidisk K given through its exterior map
///
///   psi(w) = cap * w + center + sum_{k>=1} tail[k-1] * w^{-k},
///
/// which sends |w| > 1 conformally onto the complement of K. The series is
/// assumed to continue analytically and univalently down to |w| > rho_min,
/// which is what lets the domain be shrunk onto inner level curves.
struct ExteriorMap {
  double cap = 1.0;
  cplx center{0.0, 0.0};
  std::vector<cplx> tail;
  double rho_min = 1.0;

  friend bool operator==(const ExteriorMap&, const ExteriorMap&) = default;
};

struct Disk {
  double radius = 1.0;
};

struct Ellipse {
  double semi_major = 2.0;
  double semi_minor = 1.0;
};

/// Exterior of w + strength * w^{1-cusps}; a smoothed hypocycloid with the
/// given number of lobes. Univalent on |w| >= 1 iff strength < 1/(cusps-1).
struct Hypocycloid {
  int cusps = 3;
  double strength = 0.25;
};

/// User-supplied Laurent coefficients.
struct Laurent {
  ExteriorMap map;
};

using DomainSpec = std::variant<Disk, Ellipse, Hypocycloid, Laurent>;

/// Margin added to analytic continuation radii of registry domains.
inline constexpr double kRhoMargin = 1e-6;

/// Validates the domain and builds its exterior map. Laurent specs are
/// additionally checked for simple level curves on [max(rho_min, 1-1e-6), 2].
ExteriorMap to_map(const DomainSpec& spec);

cplx psi(const ExteriorMap& map, cplx w);
cplx psi_prime(const ExteriorMap& map, cplx w);

/// Evaluates psi and psi' in one pass.
void psi_and_derivative(const ExteriorMap& map, cplx w, cplx& value, cplx& derivative);

/// Inverse of psi by damped Newton iteration. The seed is `hint` when given,
/// else (z - center) / cap pushed out to the unit circle if it falls inside.
cplx phi(const ExteriorMap& map, cplx z, std::optional<cplx> hint = std::nullopt);

inline double capacity(const ExteriorMap& map) { return map.cap; }

/// psi((1+s) e^{i theta}), a point on the level curve K_s.
cplx level_point(const ExteriorMap& map, double s, double theta);

/// psi(e^{2 pi i k / n}) for k = 0..n-1. Requires n >= 4.
std::vector<cplx> boundary_polyline(const ExteriorMap& map, int n);

/// Distance from z to K, approximated by the boundary polyline with one
/// parabolic refinement. Builds a fresh index; use BoundaryDistance for
/// repeated queries.
double dist_to_K(const ExteriorMap& map, cplx z, int n = 16384);

/// psi(phi(z) / |phi(z)|), the point of L = dK on the same Green ray as z.
cplx project_to_K(const ExteriorMap& map, cplx z);

/// Exterior map of the inner level domain bounded by psi(|w| = 1 - delta):
/// psi_delta(w) = psi((1 - delta) w).
ExteriorMap shrink(const ExteriorMap& map, double delta);

/// Conjugates psi by a similarity z -> scale * z + shift (scale complex,
/// nonzero). Used for covariance tests and user transforms.
ExteriorMap transform(const ExteriorMap& map, cplx scale, cplx shift);

/// True when the closed polyline has no crossing or touching pair of
/// non-adjacent segments.
bool is_simple_polygon(std::span<const cplx> points);

/// Simplicity of theta -> psi(r e^{i theta}) sampled at n points.
bool level_curve_is_simple(const ExteriorMap& map, double r, int n = 4096);

/// Nearest-point queries against a fixed boundary sampling of K. Immutable
/// after construction, so one instance can serve many threads.
class BoundaryDistance {
 public:
  BoundaryDistance(const ExteriorMap& map, int n = 16384);

  double operator()(cplx z) const;

  int size() const noexcept { return static_cast<int>(points_.size()); }
  std::span<const cplx> points() const noexcept { return points_; }

 private:
  double refine(cplx z, int nearest, double nearest_d2) const;

  ExteriorMap map_;
  std::vector<cplx> points_;
  double x0_ = 0, y0_ = 0, cell_w_ = 1, cell_h_ = 1;
  int cols_ = 1, rows_ = 1;
  std::vector<int> cell_start_;  // CSR layout, size cols*rows + 1
  std::vector<int> cell_items_;
};

}  // namespace widom
