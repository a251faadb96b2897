#pragma once

#include <string>
#include <vector>

#include "widom/arcs.hpp"
#include "widom/domain.hpp"
#include "widom/newton_roots.hpp"

namespace widom {

/// Where the zeros of a constructed polynomial are guaranteed to lie.
///   outside   - inside the level domain bounded by K_{5s}
///   projected - on L, obtained by pushing outside zeros along Green rays
///               (an empirical variant, not part of the proof)
///   shrunk    - on or inside L, from a construction on an inner level domain
enum class PlacementMode { outside, projected, shrunk };

std::string to_string(PlacementMode mode);
PlacementMode parse_mode(const std::string& text);

struct Provenance {
  int m = 0;
  int q = 0;
  double c = 0.0;
  double s = 0.0;
  bool strict = false;
  int quad_order = 32;
};

struct ShrinkStep {
  double delta = 0.0;
  bool feasible = false;
  double max_level = 0.0;  // max |Phi_K(zeta)| over zeros, NaN when not computable
};

/// The zeros of a monic polynomial p_n, n = q m, with provenance.
struct ZeroMultiset {
  ExteriorMap map;                 // the domain K the zeros belong to
  std::vector<cplx> zeros;
  std::vector<int> arc;            // generating arc per zero (-1 if unknown)
  PlacementMode mode = PlacementMode::outside;
  double delta = 0.0;              // shrink amount in shrunk mode
  std::vector<ShrinkStep> shrink_trace;
  Provenance provenance;

  int degree() const noexcept { return static_cast<int>(zeros.size()); }
  bool empty() const noexcept { return zeros.empty(); }
};

/// Per-arc record of the construction.
struct ArcRecord {
  std::vector<cplx> moments;  // m_{j,1..q}
  double diam = 0.0;          // d_j
  RootBundle bundle;          // coefficients and roots r_{j,k}
  BoundsRecord bounds;
  double moment_match = 0.0;  // max_l |sum_k r^l - q m_{j,l}| / max(1, (2 q d_j)^l)
};

/// Full outside-mode pipeline with all intermediate data.
struct Construction {
  ArcSystem arcs;
  std::vector<ArcRecord> records;
  ZeroMultiset zeros;
  double max_level = 0.0;  // max |Phi(zeta)| over zeros
};

Construction build_construction(const ExteriorMap& map, int q, int m, double c = kStrictC,
                                int quad_order = 32);

/// Zeros zeta_j^k = xi_j + r_{j,k} on the original domain. Throws
/// ErrorKind::location if any zero has |Phi(zeta)| >= 1 + 5s.
ZeroMultiset build_outside(const ExteriorMap& map, int q, int m, double c = kStrictC,
                           int quad_order = 32);

/// Runs the construction on shrink(map, delta) and keeps the zeros, with
/// delta the first value of the search
///   delta_0 = max(margin * 5s/(1+5s), 1e-6), doubled until every zero has
///   |Phi_K(zeta)| <= 1 (clamped once to just below 1 - rho_min),
/// followed by bisection towards the smallest feasible delta when the first
/// candidate was infeasible.
ZeroMultiset build_shrunk(const ExteriorMap& map, int q, int m, double c, double margin = 0.125,
                          int quad_order = 32);

/// Outside-mode zeros moved to L by project_to_K.
ZeroMultiset build_projected(const ExteriorMap& map, int q, int m, double c = kStrictC,
                             int quad_order = 32);

ZeroMultiset build(PlacementMode mode, const ExteriorMap& map, int q, int m, double c,
                   int quad_order = 32, double margin = 0.125);

/// Multiset union. Empty operands are identities; otherwise both must live
/// on the same domain. The mode is the weaker guarantee of the two.
ZeroMultiset concat(const ZeroMultiset& a, const ZeroMultiset& b);

/// max |Phi(zeta)| over the zeros, with phi seeded per zero.
double max_level(const ExteriorMap& map, const std::vector<cplx>& zeros);

}  // namespace widom
