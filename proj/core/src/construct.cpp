#include "widom/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "widom/error.hpp"
#include "widom/parallel.hpp"

namespace widom {
namespace {

constexpr double kDeltaFloor = 1e-6;
constexpr int kBisectionSteps = 24;

int guarantee_rank(PlacementMode mode) {
  switch (mode) {
    case PlacementMode::outside: return 0;
    case PlacementMode::shrunk: return 1;
    case PlacementMode::projected: return 2;
  }
  return 0;
}

Provenance provenance_of(const ArcSystem& arcs) {
  return {arcs.m(), arcs.q(), arcs.c(), arcs.s(), arcs.strict(), arcs.quad_order()};
}

double level_or_nan(const ExteriorMap& map, const std::vector<cplx>& zeros) {
  try {
    return max_level(map, zeros);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::string to_string(PlacementMode mode) {
  switch (mode) {
    case PlacementMode::outside: return "outside";
    case PlacementMode::projected: return "projected";
    case PlacementMode::shrunk: return "shrunk";
  }
  return "outside";
}

PlacementMode parse_mode(const std::string& text) {
  if (text == "outside") return PlacementMode::outside;
  if (text == "projected") return PlacementMode::projected;
  if (text == "shrunk") return PlacementMode::shrunk;
  throw Error(ErrorKind::parameter, "unknown placement mode '" + text + "'");
}

double max_level(const ExteriorMap& map, const std::vector<cplx>& zeros) {
  std::vector<double> levels(zeros.size());
  parallel_for(zeros.size(), [&](std::size_t i) { levels[i] = std::abs(phi(map, zeros[i])); });
  double level = 0.0;
  for (double v : levels) level = std::max(level, v);
  return level;
}

Construction build_construction(const ExteriorMap& map, int q, int m, double c, int quad_order) {
  Construction out{build_arcs(map, m, q, c, quad_order), {}, {}, 0.0};
  const ArcSystem& arcs = out.arcs;
  out.records.resize(m);

  std::vector<std::vector<cplx>> arc_zeros(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    ArcRecord& rec = out.records[j];
    rec.moments = arc_moment_row(arcs, j, q);
    rec.diam = arc_diameter(arcs, j);
    PowerSumSpec spec;
    spec.scale = rec.diam;
    for (const cplx& mom : rec.moments) spec.sums.push_back(static_cast<double>(q) * mom);
    rec.bundle = solve_power_sums(spec);
    rec.bounds = check_bounds(rec.bundle, q, rec.diam);

    const cplx xi = arcs.breakpoint(j);
    std::vector<cplx>& zs = arc_zeros[j];
    zs.reserve(q);
    for (const cplx& r : rec.bundle.roots) zs.push_back(xi + r);

    std::vector<cplx> shifted;
    for (const cplx& z : zs) shifted.push_back(z - xi);
    const std::vector<cplx> sums = power_sums(shifted, q);
    double worst = 0.0, ref = 1.0;
    for (int l = 0; l < q; ++l) {
      ref *= 2.0 * q * rec.diam;
      worst = std::max(worst, std::abs(sums[l] - spec.sums[l]) / std::max(1.0, ref));
    }
    rec.moment_match = worst;
  });

  ZeroMultiset& zm = out.zeros;
  zm.map = map;
  zm.mode = PlacementMode::outside;
  zm.provenance = provenance_of(arcs);
  zm.zeros.reserve(static_cast<std::size_t>(q) * m);
  for (int j = 0; j < m; ++j) {
    for (const cplx& z : arc_zeros[j]) {
      zm.zeros.push_back(z);
      zm.arc.push_back(j);
    }
  }

  std::vector<double> levels(zm.zeros.size());
  const double r = 1.0 + arcs.s();
  parallel_for(zm.zeros.size(), [&](std::size_t i) {
    const int j = zm.arc[i];
    const cplx hint = std::polar(r, 0.5 * (arcs.theta_begin(j) + arcs.theta_end(j)));
    levels[i] = std::abs(phi(map, zm.zeros[i], hint));
  });
  for (double v : levels) out.max_level = std::max(out.max_level, v);
  if (!(out.max_level < 1.0 + 5.0 * arcs.s())) {
    throw Error(ErrorKind::location,
                "constructed zero outside K_{5s}: max |Phi| = " + std::to_string(out.max_level));
  }
  return out;
}

ZeroMultiset build_outside(const ExteriorMap& map, int q, int m, double c, int quad_order) {
  return build_construction(map, q, m, c, quad_order).zeros;
}

ZeroMultiset build_shrunk(const ExteriorMap& map, int q, int m, double c, double margin,
                          int quad_order) {
  if (!(margin >= 0.0)) throw Error(ErrorKind::parameter, "build_shrunk: margin must be >= 0");
  const double s = c * q / m;
  const double delta_max = (1.0 - map.rho_min) * (1.0 - 1e-9);
  std::vector<ShrinkStep> trace;

  // Returns the zeros when every one lies in K, else an empty vector.
  auto attempt = [&](double delta, ZeroMultiset& zeros) -> bool {
    ShrinkStep step{delta, false, std::numeric_limits<double>::quiet_NaN()};
    try {
      const ExteriorMap inner = shrink(map, delta);
      zeros = build_outside(inner, q, m, c, quad_order);
      step.max_level = level_or_nan(map, zeros.zeros);
      step.feasible = step.max_level <= 1.0;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::parameter) throw;
    }
    trace.push_back(step);
    return step.feasible;
  };

  double delta = std::max(margin * 5.0 * s / (1.0 + 5.0 * s), kDeltaFloor);
  double lo = 0.0;  // largest known infeasible delta
  ZeroMultiset best;
  bool found = false;
  bool first = true;
  while (true) {
    const double trial = std::min(delta, delta_max);
    ZeroMultiset zeros;
    if (attempt(trial, zeros)) {
      best = std::move(zeros);
      best.delta = trial;
      found = true;
      break;
    }
    first = false;
    lo = trial;
    if (trial >= delta_max) break;
    delta *= 2.0;
  }
  if (!found) {
    throw Error(ErrorKind::shrink, "shrink infeasible for this domain/parameters");
  }
  if (!first) {
    double hi = best.delta;
    for (int it = 0; it < kBisectionSteps && hi - lo > 1e-4 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      ZeroMultiset zeros;
      if (attempt(mid, zeros)) {
        best = std::move(zeros);
        best.delta = mid;
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  best.map = map;
  best.mode = PlacementMode::shrunk;
  best.shrink_trace = std::move(trace);
  return best;
}

ZeroMultiset build_projected(const ExteriorMap& map, int q, int m, double c, int quad_order) {
  ZeroMultiset zm = build_outside(map, q, m, c, quad_order);
  parallel_for(zm.zeros.size(), [&](std::size_t i) { zm.zeros[i] = project_to_K(map, zm.zeros[i]); });
  zm.mode = PlacementMode::projected;
  const double level = max_level(map, zm.zeros);
  if (!(level <= 1.0 + 1e-10)) {
    throw Error(ErrorKind::location, "projected zero off the boundary: |Phi| = " + std::to_string(level));
  }
  return zm;
}

ZeroMultiset build(PlacementMode mode, const ExteriorMap& map, int q, int m, double c,
                   int quad_order, double margin) {
  switch (mode) {
    case PlacementMode::outside: return build_outside(map, q, m, c, quad_order);
    case PlacementMode::projected: return build_projected(map, q, m, c, quad_order);
    case PlacementMode::shrunk: return build_shrunk(map, q, m, c, margin, quad_order);
  }
  throw Error(ErrorKind::parameter, "unknown placement mode");
}

ZeroMultiset concat(const ZeroMultiset& a, const ZeroMultiset& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (!(a.map == b.map)) throw Error(ErrorKind::mismatch, "concat: zero sets belong to different domains");
  ZeroMultiset out = a;
  out.zeros.insert(out.zeros.end(), b.zeros.begin(), b.zeros.end());
  out.arc.insert(out.arc.end(), b.arc.begin(), b.arc.end());
  out.mode = guarantee_rank(a.mode) <= guarantee_rank(b.mode) ? a.mode : b.mode;
  out.delta = std::max(a.delta, b.delta);
  out.shrink_trace.clear();
  Provenance& p = out.provenance;
  p.m = a.provenance.m + b.provenance.m;
  if (a.provenance.q != b.provenance.q || a.provenance.c != b.provenance.c) {
    p.q = 0;
    p.c = 0.0;
    p.s = 0.0;
    p.strict = false;
  } else {
    p.s = p.m > 0 ? p.c * p.q / p.m : 0.0;
    p.strict = a.provenance.strict && b.provenance.strict;
  }
  return out;
}

}  // namespace widom
