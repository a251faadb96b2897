#include "widom/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "widom/construct.hpp"
#include "widom/error.hpp"
#include "widom/format.hpp"
#include "widom/norms.hpp"
#include "widom/parallel.hpp"
#include "widom/serialize.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPassTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  double slack = 0.0;
  std::string details;
  std::optional<bool> pass;  // defaults to slack >= -1e-9
};

struct Context {
  const ExteriorMap& map;
  int q, m;
  double c;
  const CheckOptions& opt;
  std::optional<Construction> construction;
  std::optional<BoundaryDistance> dist;
  std::optional<WidomReport> widom_all;

  const Construction& built() {
    if (!construction) construction.emplace(build_construction(map, q, m, c, opt.quad_order));
    return *construction;
  }
  const BoundaryDistance& distance() {
    if (!dist) dist.emplace(map, opt.boundary_n);
    return *dist;
  }
  int grid(int n) const { return std::max(opt.grid_factor * n, 256); }
  const WidomReport& widom() {
    if (!widom_all) {
      const ZeroMultiset& z = built().zeros;
      widom_all = widom_factor(z, grid(z.degree()), opt.refine_tol);
    }
    return *widom_all;
  }
};

std::string range_text(double lo, double hi) { return "[" + fmt_num(lo) + ", " + fmt_num(hi) + "]"; }

Outcome koebe_distortion(Context& ctx) {
  std::mt19937_64 rng(ctx.opt.seed);
  std::uniform_real_distribution<double> radius(1.0, 2.0), angle(0.0, kTwoPi);
  double slack = kInf, lo_ratio = kInf, hi_ratio = 0.0;
  for (int i = 0; i < ctx.opt.samples; ++i) {
    double rho = radius(rng);
    if (rho <= 1.0) rho = std::nextafter(1.0, 2.0);
    const cplx tau = std::polar(rho, angle(rng));
    cplx z, d;
    psi_and_derivative(ctx.map, tau, z, d);
    const double scale = ctx.distance()(z) / (rho - 1.0);
    const double ratio = std::abs(d) / scale;  // must lie in [1/4, 4]
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    slack = std::min({slack, 4.0 * ratio - 1.0, 1.0 - ratio / 4.0});
  }
  return {slack, "|psi'| (|tau|-1) / dist in " + range_text(lo_ratio, hi_ratio), {}};
}

Outcome local_distortion(Context& ctx) {
  std::mt19937_64 rng(ctx.opt.seed + 1);
  std::uniform_real_distribution<double> radius(1.0, 2.0), angle(0.0, kTwoPi), unit(0.0, 1.0);
  double slack = kInf, lo_ratio = kInf, hi_ratio = 0.0;
  for (int i = 0; i < ctx.opt.samples; ++i) {
    double rho = radius(rng);
    if (rho <= 1.0) rho = std::nextafter(1.0, 2.0);
    const cplx tau = std::polar(rho, angle(rng));
    double u = unit(rng);
    if (u <= 0.0) u = 0.5;
    const cplx eta = tau + std::polar(u * 0.5 * (rho - 1.0), angle(rng));
    const cplx zt = psi(ctx.map, tau);
    const double lhs = std::abs(psi(ctx.map, eta) - zt) / ctx.distance()(zt);
    const double base = std::abs(eta - tau) / (rho - 1.0);
    const double ratio = lhs / base;  // must lie in [1/16, 16]
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    slack = std::min({slack, 16.0 * ratio - 1.0, 1.0 - ratio / 16.0});
  }
  return {slack, "ratio to |eta-tau|/(|tau|-1) in " + range_text(lo_ratio, hi_ratio), {}};
}

Outcome newton_roundtrip(Context& ctx) {
  const Construction& con = ctx.built();
  double worst = 0.0;
  for (const ArcRecord& rec : con.records) {
    // expand prod (z - r_k) and compare with the Newton-identity coefficients
    std::vector<cplx> poly{cplx(1.0, 0.0)};
    for (const cplx& r : rec.bundle.roots) {
      std::vector<cplx> next(poly.size() + 1, cplx(0.0, 0.0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= r * poly[i];
      }
      poly = std::move(next);
    }
    double ref = 1.0;
    for (std::size_t l = 1; l < poly.size(); ++l) {
      ref *= ctx.q * rec.diam;
      const double err = std::abs(poly[l] - rec.bundle.coeffs[l - 1]);
      worst = std::max(worst, err / std::max(1.0, ref));
    }
  }
  return {1.0 - worst / kPassTol, "max normalized coefficient mismatch " + fmt_num(worst), {}};
}

Outcome coefficient_bound(Context& ctx) {
  double slack = kInf;
  bool pass = true;
  for (const ArcRecord& rec : ctx.built().records) {
    slack = std::min(slack, rec.bounds.min_coeff_slack_rel);
    pass = pass && rec.bounds.coeff_pass;
  }
  return {slack, "min relative slack over arcs", pass};
}

Outcome root_bound(Context& ctx) {
  double slack = kInf;
  bool pass = true;
  for (const ArcRecord& rec : ctx.built().records) {
    slack = std::min(slack, rec.bounds.min_root_slack_rel);
    pass = pass && rec.bounds.root_pass;
  }
  return {slack, "min relative slack over arcs", pass};
}

Outcome arc_geometry_chain(Context& ctx) {
  const ArcSystem& arcs = ctx.built().arcs;
  const BoundaryDistance& dist = ctx.distance();
  std::vector<double> slacks(arcs.m());
  parallel_for(static_cast<std::size_t>(arcs.m()), [&](std::size_t j) {
    const ArcGeometry g = arc_geometry(arcs, static_cast<int>(j), dist);
    const double lower = g.dist / (2000.0 * std::numbers::pi * ctx.q);
    const double upper = g.dist / (10.0 * ctx.q);
    slacks[j] = std::min({g.chord / lower - 1.0, g.diam / g.chord - 1.0, g.length / g.diam - 1.0,
                          1.0 - g.length / upper});
  });
  const auto worst = std::min_element(slacks.begin(), slacks.end());
  return {*worst, "tightest arc j=" + std::to_string(worst - slacks.begin() + 1), {}};
}

Outcome zero_location(Context& ctx) {
  const Construction& con = ctx.built();
  const double bound = 1.0 + 5.0 * con.arcs.s();
  return {(bound - con.max_level) / bound,
          "max |Phi(zeta)| = " + fmt_num(con.max_level) + ", bound 1+5s = " + fmt_num(bound),
          con.max_level < bound};
}

Outcome moment_match(Context& ctx) {
  double worst = 0.0;
  for (const ArcRecord& rec : ctx.built().records) worst = std::max(worst, rec.moment_match);
  return {1.0 - worst / kPassTol, "max normalized power-sum mismatch " + fmt_num(worst), {}};
}

std::vector<double> green_values(Context& ctx, double s) {
  const int count = ctx.opt.green_points;
  std::vector<double> values(count);
  const BoundaryDistance& dist = ctx.distance();
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
    const cplx z = psi(ctx.map, std::polar(1.0, kTwoPi * static_cast<double>(k) / count));
    values[k] = green_integral(ctx.map, z, s, ctx.q, ctx.opt.green_quad_order, dist);
  });
  return values;
}

Outcome norm_bound_shape(Context& ctx) {
  const WidomReport& rep = ctx.widom();
  const std::vector<double> g = green_values(ctx, ctx.built().arcs.s());
  const double gmax = *std::max_element(g.begin(), g.end());
  const bool finite = std::isfinite(rep.log_widom()) && std::isfinite(gmax);
  return {0.0,
          "recorded: log widom = " + fmt_num(rep.log_widom()) + ", max green integral = " +
              fmt_num(gmax) + ", log widom / (1 + max) = " + fmt_num(rep.log_widom() / (1.0 + gmax)),
          finite};
}

Outcome green_uniformity(Context& ctx) {
  std::vector<double> g = green_values(ctx, ctx.built().arcs.s());
  std::vector<double> sorted = g;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  const double median = k % 2 ? sorted[k / 2] : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  const double ratio = sorted.back() / median;
  return {1.0 - ratio / 10.0, "max/median = " + fmt_num(ratio) + " (limit 10)", {}};
}

Outcome bernstein_walsh(Context& ctx) {
  const Construction& con = ctx.built();
  const CheckRecord rec =
      bernstein_walsh_check(con.zeros.zeros, ctx.map, con.arcs.s(), ctx.grid(con.zeros.degree()));
  return {rec.slack, rec.details, rec.pass};
}

Outcome submultiplicativity(Context& ctx) {
  const ZeroMultiset& all = ctx.built().zeros;
  ZeroMultiset a = all, b = all;
  a.zeros.clear();
  a.arc.clear();
  b.zeros.clear();
  b.arc.clear();
  const int half = ctx.m / 2;
  for (std::size_t i = 0; i < all.zeros.size(); ++i) {
    ZeroMultiset& dst = all.arc[i] < half ? a : b;
    dst.zeros.push_back(all.zeros[i]);
    dst.arc.push_back(all.arc[i]);
  }
  const WidomReport ra = widom_factor(a, ctx.grid(all.degree()), ctx.opt.refine_tol);
  const WidomReport rb = widom_factor(b, ctx.grid(all.degree()), ctx.opt.refine_tol);
  const WidomReport& rab = ctx.widom();
  const double slack = ra.log_widom() + rb.log_widom() - rab.log_widom();
  return {slack,
          "log w(AB) = " + fmt_num(rab.log_widom()) + ", log w(A) + log w(B) = " +
              fmt_num(ra.log_widom() + rb.log_widom()),
          {}};
}

Outcome capacity_lower_bound(Context& ctx) {
  const WidomReport& rep = ctx.widom();
  return {rep.log_widom(), "log widom = " + fmt_num(rep.log_widom()),
          rep.log_widom() >= std::log1p(-kPassTol)};
}

struct Registered {
  const char* name;
  const char* ref;
  bool strict;
  Outcome (*run)(Context&);
};

constexpr Registered kRegistry[kCheckCount] = {
    {"koebe_distortion", "dist/(4(|tau|-1)) <= |psi'(tau)| <= 4 dist/(|tau|-1)", false, koebe_distortion},
    {"local_distortion", "|eta-tau|/(16(|tau|-1)) <= |psi(eta)-psi(tau)|/dist <= 16|eta-tau|/(|tau|-1)",
     false, local_distortion},
    {"newton_roundtrip", "prod_k (z - r_k) reproduces the Newton-identity coefficients", false,
     newton_roundtrip},
    {"coefficient_bound", "|a_{q-l}| <= q^l d^l", false, coefficient_bound},
    {"root_bound", "|r_k| <= 2 q d", false, root_bound},
    {"arc_geometry_chain", "dist/(2000 pi q) <= |xi_{j+1}-xi_j| <= diam <= |I_j| <= dist/(10 q)", true,
     arc_geometry_chain},
    {"zero_location", "|Phi(zeta_j^k)| < 1 + 5s", false, zero_location},
    {"moment_match", "sum_k (zeta_j^k - xi_j)^l = q m_{j,l}", false, moment_match},
    {"norm_bound_shape", "log ||p_n||_K - n log cap <= log c1 + c2 max green integral (recorded)", false,
     norm_bound_shape},
    {"green_integral_uniformity", "max_z green integral <= 10 median_z", false, green_uniformity},
    {"bernstein_walsh", "||p||_{K_s} <= (1+s)^n ||p||_K", false, bernstein_walsh},
    {"submultiplicativity", "w(AB) <= w(A) w(B)", false, submultiplicativity},
    {"capacity_lower_bound", "||p_n||_K >= cap^n", false, capacity_lower_bound},
};

}  // namespace

bool CheckReport::ok() const noexcept {
  return std::none_of(entries.begin(), entries.end(),
                      [](const CheckEntry& e) { return e.status == CheckStatus::fail; });
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

CheckReport run_all_checks(const ExteriorMap& map, int q, int m, double c, const CheckOptions& options) {
  CheckReport report;
  Context ctx{map, q, m, c, options, {}, {}, {}};
  const bool strict = std::abs(c - kStrictC) <= 1e-12 * kStrictC &&
                      m > static_cast<long>(std::floor(c * q)) + 1;
  report.config = {{"domain", map},
                   {"q", q},
                   {"m", m},
                   {"c", c},
                   {"s", c * q / m},
                   {"strict", strict},
                   {"quad_order", options.quad_order},
                   {"boundary_n", options.boundary_n},
                   {"grid_factor", options.grid_factor},
                   {"refine_tol", options.refine_tol},
                   {"samples", options.samples},
                   {"seed", options.seed},
                   {"green_points", options.green_points}};

  for (const Registered& r : kRegistry) {
    CheckEntry e;
    e.name = r.name;
    e.ref = r.ref;
    e.strict_mode_required = r.strict;
    if (r.strict && !strict) {
      e.status = CheckStatus::skipped;
      e.details = "needs c = 480 pi and m > floor(c q) + 1";
      report.entries.push_back(std::move(e));
      continue;
    }
    try {
      const Outcome out = r.run(ctx);
      e.measured_slack = out.slack;
      e.details = out.details;
      const bool pass = out.pass.value_or(out.slack >= -kPassTol);
      e.status = pass ? CheckStatus::pass : CheckStatus::fail;
    } catch (const std::exception& ex) {
      e.status = CheckStatus::fail;
      e.measured_slack = -kInf;
      e.details = std::string("error: ") + ex.what();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

void print_summary(std::ostream& out, const CheckReport& report) {
  std::size_t wname = 4, wref = 3;
  for (const CheckEntry& e : report.entries) {
    wname = std::max(wname, e.name.size());
    wref = std::max(wref, e.ref.size());
  }
  out << std::left << std::setw(static_cast<int>(wname)) << "NAME" << " | " << std::setw(static_cast<int>(wref))
      << "REF" << " | " << std::setw(7) << "PASS" << " | SLACK\n";
  for (const CheckEntry& e : report.entries) {
    out << std::left << std::setw(static_cast<int>(wname)) << e.name << " | "
        << std::setw(static_cast<int>(wref)) << e.ref << " | " << std::setw(7) << to_string(e.status) << " | "
        << (e.status == CheckStatus::skipped ? "-" : fmt_num(e.measured_slack)) << '\n';
  }
}

}  // namespace widom
