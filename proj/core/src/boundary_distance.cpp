#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "widom/domain.hpp"
#include "widom/error.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

BoundaryDistance::BoundaryDistance(const ExteriorMap& map, int n) : map_(map) {
  if (n < 1024) throw Error(ErrorKind::parameter, "dist_to_K: boundary sampling needs at least 1024 points");
  points_ = boundary_polyline(map, n);

  double x1 = points_[0].real(), y1 = points_[0].imag();
  x0_ = x1;
  y0_ = y1;
  for (const cplx& p : points_) {
    x0_ = std::min(x0_, p.real());
    y0_ = std::min(y0_, p.imag());
    x1 = std::max(x1, p.real());
    y1 = std::max(y1, p.imag());
  }
  const int side = std::clamp(static_cast<int>(2.0 * std::sqrt(static_cast<double>(n))), 8, 512);
  const double span = std::max({x1 - x0_, y1 - y0_, 1e-300});
  cols_ = std::max(1, static_cast<int>(std::ceil(side * (x1 - x0_) / span)));
  rows_ = std::max(1, static_cast<int>(std::ceil(side * (y1 - y0_) / span)));
  cell_w_ = std::max((x1 - x0_) / cols_, span * 1e-12);
  cell_h_ = std::max((y1 - y0_) / rows_, span * 1e-12);

  auto cell_of = [&](const cplx& p) {
    const int i = std::clamp(static_cast<int>((p.real() - x0_) / cell_w_), 0, cols_ - 1);
    const int j = std::clamp(static_cast<int>((p.imag() - y0_) / cell_h_), 0, rows_ - 1);
    return j * cols_ + i;
  };
  cell_start_.assign(static_cast<std::size_t>(cols_) * rows_ + 1, 0);
  for (const cplx& p : points_) ++cell_start_[cell_of(p) + 1];
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_items_.resize(points_.size());
  std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (int k = 0; k < n; ++k) cell_items_[fill[cell_of(points_[k])]++] = k;
}

double BoundaryDistance::operator()(cplx z) const {
  const int ci = std::clamp(static_cast<int>(std::floor((z.real() - x0_) / cell_w_)), 0, cols_ - 1);
  const int cj = std::clamp(static_cast<int>(std::floor((z.imag() - y0_) / cell_h_)), 0, rows_ - 1);
  const double step = std::min(cell_w_, cell_h_);

  double best_d2 = std::numeric_limits<double>::infinity();
  int best = -1;
  auto scan_cell = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= cols_ || j >= rows_) return;
    const int c = j * cols_ + i;
    for (int t = cell_start_[c]; t < cell_start_[c + 1]; ++t) {
      const int k = cell_items_[t];
      const double d2 = std::norm(z - points_[k]);
      if (d2 < best_d2 || (d2 == best_d2 && k < best)) {
        best_d2 = d2;
        best = k;
      }
    }
  };
  const int max_ring = std::max(cols_, rows_);
  for (int r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      scan_cell(ci, cj);
    } else {
      for (int i = ci - r; i <= ci + r; ++i) {
        scan_cell(i, cj - r);
        scan_cell(i, cj + r);
      }
      for (int j = cj - r + 1; j <= cj + r - 1; ++j) {
        scan_cell(ci - r, j);
        scan_cell(ci + r, j);
      }
    }
    // Any point in ring r+1 or beyond differs by > r cells along one axis.
    if (best >= 0 && std::sqrt(best_d2) <= r * step) break;
  }
  return refine(z, best, best_d2);
}

double BoundaryDistance::refine(cplx z, int nearest, double nearest_d2) const {
  // Parabolic fits of |z - psi(e^{i theta})|^2 on successively narrower
  // stencils; every candidate is re-evaluated on the true curve, so the
  // result never exceeds the polyline minimum.
  const int n = size();
  double theta = kTwoPi * nearest / n;
  double h = kTwoPi / n;
  double best_d2 = nearest_d2;
  auto f = [&](double t) { return std::norm(z - psi(map_, std::polar(1.0, t))); };
  double fm = std::norm(z - points_[(nearest + n - 1) % n]);
  double fp = std::norm(z - points_[(nearest + 1) % n]);
  double f0 = nearest_d2;
  for (int pass = 0; pass < 3; ++pass) {
    const double curv = fm - 2.0 * f0 + fp;
    if (!(curv > 0.0)) break;
    const double t = std::clamp(0.5 * (fm - fp) / curv, -1.0, 1.0);
    const double cand_theta = theta + t * h;
    const double fc = f(cand_theta);
    if (fc < best_d2) {
      best_d2 = fc;
      theta = cand_theta;
    }
    h /= 32.0;
    f0 = best_d2;
    fm = f(theta - h);
    fp = f(theta + h);
  }
  return std::sqrt(best_d2);
}

}  // namespace widom
