#pragma once

#include <functional>

namespace widom {

struct PeriodicMax {
  double value = 0.0;
  double theta = 0.0;
};

/// Maximum of a 2 pi-periodic function: values on a uniform grid of `grid`
/// angles (evaluated in parallel), then golden-section refinement of the 16
/// largest local maxima until the bracket is narrower than `tol`. Equal
/// maxima resolve to the smallest angle in [0, 2 pi).
PeriodicMax scan_periodic_max(const std::function<double(double)>& f, int grid, double tol);

}  // namespace widom
