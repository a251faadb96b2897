#include "widom/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "widom/error.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_outside(const ExteriorMap& map, cplx w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw Error(ErrorKind::domain, "psi: non-finite argument");
  }
  if (std::abs(w) <= map.rho_min) {
    throw Error(ErrorKind::domain,
                "psi: |w| = " + std::to_string(std::abs(w)) +
                    " is not above the continuation radius " + std::to_string(map.rho_min));
  }
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

int orientation(cplx a, cplx b, cplx c) {
  const double v = cross(b - a, c - a);
  const double scale = std::abs(b - a) * std::abs(c - a);
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void validate_map_fields(const ExteriorMap& map) {
  if (!(map.cap > 0.0) || !std::isfinite(map.cap)) {
    throw Error(ErrorKind::parameter, "exterior map: capacity must be positive");
  }
  if (!(map.rho_min > 0.0 && map.rho_min <= 1.0)) {
    throw Error(ErrorKind::parameter, "exterior map: rho_min must lie in (0, 1]");
  }
  for (const cplx& a : map.tail) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorKind::parameter, "exterior map: non-finite Laurent coefficient");
    }
  }
}

}  // namespace

ExteriorMap to_map(const DomainSpec& spec) {
  return std::visit(
      [](const auto& d) -> ExteriorMap {
        using T = std::decay_t<decltype(d)>;
        ExteriorMap map;
        if constexpr (std::is_same_v<T, Disk>) {
          if (!(d.radius > 0.0)) throw Error(ErrorKind::parameter, "disk: radius must be positive");
          map.cap = d.radius;
          map.rho_min = kRhoMargin;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          if (!(d.semi_minor > 0.0) || d.semi_major < d.semi_minor) {
            throw Error(ErrorKind::parameter, "ellipse: need semi_major >= semi_minor > 0");
          }
          const double a = d.semi_major, b = d.semi_minor;
          map.cap = 0.5 * (a + b);
          if (a > b) map.tail = {cplx(0.5 * (a - b), 0.0)};
          map.rho_min = std::sqrt((a - b) / (a + b)) + kRhoMargin;
        } else if constexpr (std::is_same_v<T, Hypocycloid>) {
          if (d.cusps < 3) throw Error(ErrorKind::parameter, "hypocycloid: cusps must be >= 3");
          if (!(d.strength > 0.0) || d.strength >= 1.0 / (d.cusps - 1)) {
            throw Error(ErrorKind::parameter, "hypocycloid: strength must lie in (0, 1/(cusps-1))");
          }
          map.cap = 1.0;
          map.tail.assign(d.cusps - 1, cplx(0.0, 0.0));
          map.tail.back() = cplx(d.strength, 0.0);
          map.rho_min = std::pow(d.strength * (d.cusps - 1), 1.0 / d.cusps) + kRhoMargin;
        } else {
          map = d.map;
          validate_map_fields(map);
          const double lo = std::max(map.rho_min, 1.0 - 1e-6);
          for (int k = 0; k <= 4; ++k) {
            double r = lo + (2.0 - lo) * k / 4.0;
            if (k == 0) r *= 1.0 + 1e-9;
            if (!level_curve_is_simple(map, r)) {
              throw Error(ErrorKind::parameter,
                          "laurent map: level curve |w| = " + std::to_string(r) + " is not simple");
            }
          }
          return map;
        }
        validate_map_fields(map);
        return map;
      },
      spec);
}

void psi_and_derivative(const ExteriorMap& map, cplx w, cplx& value, cplx& derivative) {
  require_outside(map, w);
  const cplx u = 1.0 / w;
  // Horner in u for sum a_k u^k and sum k a_k u^k.
  cplx series(0.0, 0.0), dseries(0.0, 0.0);
  for (std::size_t k = map.tail.size(); k >= 1; --k) {
    series = series * u + map.tail[k - 1];
    dseries = dseries * u + static_cast<double>(k) * map.tail[k - 1];
  }
  series *= u;
  dseries *= u;
  value = map.cap * w + map.center + series;
  derivative = map.cap - dseries * u;
}

cplx psi(const ExteriorMap& map, cplx w) {
  cplx v, d;
  psi_and_derivative(map, w, v, d);
  return v;
}

cplx psi_prime(const ExteriorMap& map, cplx w) {
  cplx v, d;
  psi_and_derivative(map, w, v, d);
  return d;
}

cplx phi(const ExteriorMap& map, cplx z, std::optional<cplx> hint) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::inversion, "interior point or inversion failure: non-finite input");
  }
  cplx w = hint ? *hint : (z - map.center) / map.cap;
  if (std::abs(w) <= std::max(1.0, map.rho_min)) {
    w = std::abs(w) > 0.0 ? w / std::abs(w) * std::max(1.0, 1.5 * map.rho_min) : cplx(1.0, 0.0);
  }
  const double tol = 1e-12 * (1.0 + std::abs(z));
  cplx value, deriv;
  psi_and_derivative(map, w, value, deriv);
  double residual = std::abs(value - z);
  for (int it = 0; it < 100; ++it) {
    if (residual <= tol) break;
    if (deriv == cplx(0.0, 0.0)) break;
    const cplx step = (value - z) / deriv;
    double scale = 1.0;
    bool accepted = false;
    for (int half = 0; half < 40; ++half, scale *= 0.5) {
      const cplx trial = w - scale * step;
      if (std::abs(trial) <= map.rho_min) continue;
      cplx tv, td;
      psi_and_derivative(map, trial, tv, td);
      const double tr = std::abs(tv - z);
      if (tr < residual) {
        w = trial;
        value = tv;
        deriv = td;
        residual = tr;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(residual <= tol)) {
    throw Error(ErrorKind::inversion, "interior point or inversion failure: Newton did not converge");
  }
  if (std::abs(w) <= map.rho_min) {
    throw Error(ErrorKind::inversion, "interior point or inversion failure: root below continuation radius");
  }
  return w;
}

cplx level_point(const ExteriorMap& map, double s, double theta) {
  return psi(map, std::polar(1.0 + s, theta));
}

std::vector<cplx> boundary_polyline(const ExteriorMap& map, int n) {
  if (n < 4) throw Error(ErrorKind::parameter, "boundary_polyline: need at least 4 points");
  std::vector<cplx> pts(n);
  for (int k = 0; k < n; ++k) pts[k] = psi(map, std::polar(1.0, kTwoPi * k / n));
  return pts;
}

double dist_to_K(const ExteriorMap& map, cplx z, int n) {
  return BoundaryDistance(map, n)(z);
}

cplx project_to_K(const ExteriorMap& map, cplx z) {
  const cplx w = phi(map, z);
  return psi(map, w / std::abs(w));
}

ExteriorMap shrink(const ExteriorMap& map, double delta) {
  if (!(delta >= 0.0) || !(1.0 - delta > map.rho_min)) {
    throw Error(ErrorKind::shrink, "shrink exceeds continuation radius");
  }
  const double f = 1.0 - delta;
  ExteriorMap out = map;
  out.cap = map.cap * f;
  double scale = 1.0;
  for (cplx& a : out.tail) {
    scale /= f;
    a *= scale;
  }
  out.rho_min = map.rho_min / f;
  if (delta > 0.0 && !level_curve_is_simple(out, 1.0)) {
    throw Error(ErrorKind::shrink, "shrink exceeds continuation radius: shrunken curve is not simple");
  }
  return out;
}

ExteriorMap transform(const ExteriorMap& map, cplx scale, cplx shift) {
  if (scale == cplx(0.0, 0.0)) throw Error(ErrorKind::parameter, "transform: zero scale");
  // new psi(w) = scale * psi(e^{-i arg scale} w) + shift keeps psi'(inf) > 0.
  const double mod = std::abs(scale);
  const cplx rot = scale / mod;
  ExteriorMap out = map;
  out.cap = map.cap * mod;
  out.center = scale * map.center + shift;
  cplx r = rot;
  for (cplx& a : out.tail) {
    r *= rot;
    a = mod * a * r;
  }
  return out;
}

bool is_simple_polygon(std::span<const cplx> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  struct Seg {
    double xmin, xmax;
    std::size_t i;
  };
  std::vector<Seg> segs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    segs[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), i};
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
    return a.xmin < b.xmin || (a.xmin == b.xmin && a.i < b.i);
  });
  for (std::size_t u = 0; u < n; ++u) {
    const Seg& s = segs[u];
    const cplx a1 = pts[s.i], a2 = pts[(s.i + 1) % n];
    const double ylo = std::min(a1.imag(), a2.imag()), yhi = std::max(a1.imag(), a2.imag());
    for (std::size_t v = u + 1; v < n && segs[v].xmin <= s.xmax; ++v) {
      const std::size_t j = segs[v].i;
      const std::size_t gap = s.i > j ? s.i - j : j - s.i;
      if (gap == 1 || gap == n - 1) continue;
      const cplx b1 = pts[j], b2 = pts[(j + 1) % n];
      if (std::max(b1.imag(), b2.imag()) < ylo || std::min(b1.imag(), b2.imag()) > yhi) continue;
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

bool level_curve_is_simple(const ExteriorMap& map, double r, int n) {
  std::vector<cplx> pts(n);
  try {
    for (int k = 0; k < n; ++k) pts[k] = psi(map, std::polar(r, kTwoPi * k / n));
  } catch (const Error&) {
    return false;
  }
  return is_simple_polygon(pts);
}

}  // namespace widom
