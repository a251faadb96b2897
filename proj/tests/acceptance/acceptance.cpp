// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "widom/arcs.hpp"
#include "widom/cheb_oracle.hpp"
#include "widom/construct.hpp"
#include "widom/domain.hpp"
#include "widom/error.hpp"
#include "widom/format.hpp"
#include "widom/norms.hpp"
#include "widom/parallel.hpp"
#include "widom/report.hpp"

using namespace widom;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Line {
  bool pass = false;
  std::string detail;
};

struct Options {
  bool update = false;
  fs::path data = WIDOM_TEST_DATA;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Config {
  std::string name;
  ExteriorMap map;
  int q = 2;
  int m = 0;
  double c = 0.0;

  std::string label() const {
    std::ostringstream os;
    os << name << " q=" << q << " m=" << m << (c == kStrictC ? " c=480pi" : " c=4pi");
    return os.str();
  }
};

std::vector<Config> moment_configs() {
  std::vector<Config> out;
  const std::pair<std::string, ExteriorMap> domains[] = {
      {"ellipse(2,1)", to_map(Ellipse{2.0, 1.0})}, {"hypocycloid(3,0.25)", to_map(Hypocycloid{3, 0.25})}};
  for (const auto& [name, map] : domains) {
    for (int q : {2, 3}) {
      const long m0 = static_cast<long>(std::floor(kStrictC * q)) + 1;
      out.push_back({name, map, q, static_cast<int>(m0 + 1), kStrictC});
      out.push_back({name, map, q, 64, 4.0 * std::numbers::pi});
    }
  }
  return out;
}

struct Built {
  Config config;
  Construction con;
};

// Shared by the moment, bound, location and Bernstein-Walsh criteria.
std::vector<Built>& constructions(double* elapsed = nullptr) {
  static std::vector<Built> built;
  static double took = 0.0;
  if (built.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const Config& cfg : moment_configs()) built.push_back({cfg, build_construction(cfg.map, cfg.q, cfg.m, cfg.c)});
    took = seconds_since(t0);
  }
  if (elapsed) *elapsed = took;
  return built;
}

Line moment_matching(const Options&) {
  double elapsed = 0.0;
  const std::vector<Built>& all = constructions(&elapsed);
  double worst = 0.0;
  std::string where;
  for (const Built& b : all) {
    const Construction& con = b.con;
    const int q = b.config.q;
    std::vector<std::vector<cplx>> sums(con.arcs.m(), std::vector<cplx>(q, 0.0));
    for (std::size_t i = 0; i < con.zeros.zeros.size(); ++i) {
      const int j = con.zeros.arc[i];
      const cplx r = con.zeros.zeros[i] - con.arcs.breakpoint(j);
      cplx p = 1.0;
      for (int l = 0; l < q; ++l) sums[j][l] += (p *= r);
    }
    for (int j = 0; j < con.arcs.m(); ++j) {
      const ArcRecord& rec = con.records[j];
      for (int l = 1; l <= q; ++l) {
        const double scale = std::max(1.0, std::pow(2.0 * q * rec.diam, l));
        const double err = std::abs(sums[j][l - 1] - static_cast<double>(q) * rec.moments[l - 1]) / scale;
        if (err > worst) {
          worst = err;
          where = b.config.label() + " j=" + std::to_string(j + 1) + " l=" + std::to_string(l);
        }
      }
    }
  }
  const bool ok = worst <= 1e-9 && elapsed < 60.0;
  return {ok, std::to_string(all.size()) + " configs, worst normalized mismatch " + num(worst) + " at " + where +
                  ", construction time " + num(std::round(elapsed * 10) / 10) + " s (limit 60)"};
}

Line root_bounds(const Options&) {
  double worst_coeff = INFINITY, worst_root = INFINITY;
  int failing = 0;
  for (const Built& b : constructions()) {
    for (const ArcRecord& rec : b.con.records) {
      const double d = rec.diam;
      const int q = b.config.q;
      // recomputed from the stored coefficients and roots
      for (int l = 1; l <= q; ++l) {
        const double bound = std::pow(q * d, l);
        const double slack = (bound - std::abs(rec.bundle.coeffs[l - 1])) / std::max(bound, 1e-300);
        worst_coeff = std::min(worst_coeff, slack);
        if (slack < -1e-9) ++failing;
      }
      for (const cplx& r : rec.bundle.roots) {
        const double bound = 2.0 * q * d;
        const double slack = (bound - std::abs(r)) / std::max(bound, 1e-300);
        worst_root = std::min(worst_root, slack);
        if (slack < -1e-9) ++failing;
      }
    }
  }
  return {failing == 0, "min relative slack: coefficients " + num(worst_coeff) + ", roots " + num(worst_root) +
                            ", violations " + std::to_string(failing)};
}

Line zero_location(const Options&) {
  bool ok = true;
  double worst_outside = 0.0;
  double worst_shrunk = 0.0;
  int feasible = 0;
  std::vector<std::string> infeasible;
  for (const Built& b : constructions()) {
    const double s = b.con.arcs.s();
    const double level = max_level(b.config.map, b.con.zeros.zeros);
    worst_outside = std::max(worst_outside, level / (1.0 + 5.0 * s));
    if (!(level < 1.0 + 5.0 * s)) ok = false;
    try {
      const ZeroMultiset shrunk = build_shrunk(b.config.map, b.config.q, b.config.m, b.config.c);
      const double sl = max_level(b.config.map, shrunk.zeros);
      worst_shrunk = std::max(worst_shrunk, sl);
      if (!(sl <= 1.0 + 1e-10)) ok = false;
      ++feasible;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::shrink) throw;
      infeasible.push_back(b.config.label());
    }
  }
  if (feasible == 0) ok = false;
  std::string detail = "outside max |Phi|/(1+5s) = " + num(worst_outside) + "; shrunk max |Phi| = " +
                       num(worst_shrunk) + " on " + std::to_string(feasible) + " feasible configs";
  if (!infeasible.empty()) {
    detail += "; shrink infeasible on";
    for (std::size_t i = 0; i < infeasible.size(); ++i) detail += (i ? ", " : " ") + infeasible[i];
  }
  return {ok, detail};
}

Line arc_chain(const Options&) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  const std::pair<std::string, ExteriorMap> domains[] = {{"disk(1)", to_map(Disk{1.0})},
                                                         {"ellipse(2,1)", to_map(Ellipse{2.0, 1.0})}};
  for (const auto& [name, map] : domains) {
    const int q = 2, m = 3017;
    const ArcSystem arcs = build_arcs(map, m, q, kStrictC);
    if (!arcs.strict()) ok = false;
    const BoundaryDistance dist(map, 16384);
    std::vector<double> slack(m);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
      const ArcGeometry g = arc_geometry(arcs, static_cast<int>(j), dist);
      const double lower = g.dist / (2000.0 * std::numbers::pi * q);
      const double upper = g.dist / (10.0 * q);
      slack[j] = std::min({g.chord / lower - 1.0, g.diam / g.chord - 1.0, g.length / g.diam - 1.0,
                           1.0 - g.length / upper});
    });
    const double worst = *std::min_element(slack.begin(), slack.end());
    if (!(worst >= -1e-9)) ok = false;
    detail += name + " min relative slack " + num(worst) + "; ";
  }
  const double took = seconds_since(t0);
  if (took >= 300.0) ok = false;
  return {ok, detail + "time " + num(std::round(took * 10) / 10) + " s (limit 300)"};
}

RunConfig ellipse_sweep_config() {
  RunConfig cfg;
  cfg.domain = Ellipse{2.0, 1.0};
  cfg.q = 2;
  cfg.c = 4.0 * std::numbers::pi;
  cfg.m_list = {64, 128, 256, 512};
  cfg.mode = PlacementMode::shrunk;
  return cfg;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2) << '\n';
}

Line widom_boundedness(const Options& opt) {
  const Sweep sweep = run_sweep(ellipse_sweep_config());
  bool ok = true;
  double lo = INFINITY, hi = 0.0;
  std::string values;
  for (const SweepRow& row : sweep.rows) {
    if (!row.report || !std::isfinite(row.report->widom)) {
      ok = false;
      values += " m=" + std::to_string(row.m) + ":" + (row.report ? "inf" : row.error);
      continue;
    }
    const double w = row.report->widom;
    values += " m=" + std::to_string(row.m) + ":" + num(w);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
    if (!(w >= 1.0 - 1e-9)) ok = false;
  }
  if (!(hi / lo <= 10.0)) ok = false;

  const fs::path file = opt.data / "ellipse_shrunk_widom.json";
  std::string base;
  if (opt.update || !fs::exists(file)) {
    if (ok) {
      write_json(file, baseline_from_sweep(sweep));
      base = "baseline written";
    } else {
      base = "baseline not written";
    }
  } else {
    const BaselineDiff diff = compare_baseline(sweep, read_json(file));
    if (!diff.ok) ok = false;
    base = "baseline max rel drift " + num(diff.max_rel) + " (limit 1e-6)";
  }
  return {ok, "widom" + values + ", max/min " + num(hi / lo) + ", " + base};
}

Line disk_exactness(const Options&) {
  const ExteriorMap disk = to_map(Disk{1.0});
  bool ok = true;
  double worst_w = 0.0, worst_c = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const ChebResult r = lawson_chebyshev(disk, n);
    worst_w = std::max(worst_w, std::abs(r.norm_est - 1.0));
    for (const cplx& c : r.coeffs) worst_c = std::max(worst_c, std::abs(c));
  }
  if (!(worst_w <= 1e-6 && worst_c <= 1e-6)) ok = false;
  double min_constructed = INFINITY;
  for (const auto& [q, m] : std::vector<std::pair<int, int>>{{2, 64}, {2, 128}, {2, 256}, {3, 64}}) {
    const ZeroMultiset z = build_shrunk(disk, q, m, 4.0 * std::numbers::pi);
    min_constructed = std::min(min_constructed, widom_factor(z).widom);
  }
  if (!(min_constructed >= 1.0 - 1e-9)) ok = false;
  return {ok, "oracle |w_n - 1| <= " + num(worst_w) + ", max |c_k| = " + num(worst_c) +
                  " for n = 1..16; min constructed shrunk factor " + num(min_constructed)};
}

Line submultiplicativity(const Options&) {
  const ExteriorMap ellipse = to_map(Ellipse{2.0, 1.0});
  std::mt19937_64 rng(977);
  const PlacementMode modes[] = {PlacementMode::outside, PlacementMode::shrunk, PlacementMode::projected};
  const double cs[] = {std::numbers::pi, 2.0 * std::numbers::pi, 4.0 * std::numbers::pi};
  auto draw = [&]() {
    for (;;) {
      const PlacementMode mode = modes[rng() % 3];
      const int q = 2 + static_cast<int>(rng() % 2);
      const double c = cs[rng() % 3];
      const int m = static_cast<int>(std::floor(c * q)) + 1 + static_cast<int>(rng() % 48);
      try {
        return build(mode, ellipse, q, m, c);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::shrink) throw;
      }
    }
  };
  double worst = -INFINITY, best = INFINITY;
  for (int pair = 0; pair < 20; ++pair) {
    const ZeroMultiset a = draw();
    const ZeroMultiset b = draw();
    const double la = widom_factor(a).log_widom();
    const double lb = widom_factor(b).log_widom();
    const double lab = widom_factor(concat(a, b)).log_widom();
    worst = std::max(worst, lab - la - lb);
    best = std::min(best, lab - la - lb);
  }
  return {worst <= std::log1p(1e-9), "20 pairs, log(w(AB) / (w(A) w(B))) in [" + num(best) + ", " + num(worst) + "]"};
}

Line green_uniformity(const Options& opt) {
  const ExteriorMap ellipse = to_map(Ellipse{2.0, 1.0});
  const BoundaryDistance dist(ellipse, 16384);
  const int points = 64;
  bool ok = true;
  json current = json::object();
  std::string detail;
  for (double s : {1e-2, 1e-3}) {
    std::vector<double> g(points);
    parallel_for(points, [&](std::size_t k) {
      const cplx z = psi(ellipse, std::polar(1.0, kTwoPi * static_cast<double>(k) / points));
      g[k] = green_integral(ellipse, z, s, 2, 16, dist);
    });
    std::vector<double> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[points / 2 - 1] + sorted[points / 2]);
    const double ratio = sorted.back() / median;
    if (!(ratio <= 10.0)) ok = false;
    detail += "s=" + num(s) + " max/median " + num(ratio) + "; ";
    current[fmt_num(s)] = g;
  }
  const fs::path file = opt.data / "ellipse_green.json";
  if (opt.update || !fs::exists(file)) {
    if (ok) {
      write_json(file, {{"domain", "ellipse(2,1)"}, {"q", 2}, {"points", points}, {"values", current}});
      detail += "baseline written";
    } else {
      detail += "baseline not written";
    }
  } else {
    const json base = read_json(file).at("values");
    double drift = 0.0;
    for (const auto& [key, values] : current.items()) {
      if (!base.contains(key) || base.at(key).size() != values.size()) {
        drift = INFINITY;
        continue;
      }
      for (std::size_t k = 0; k < values.size(); ++k) {
        const double a = values[k].get<double>(), b = base.at(key)[k].get<double>();
        drift = std::max(drift, std::abs(a - b) / std::abs(b));
      }
    }
    if (!(drift <= kBaselineTol)) ok = false;
    detail += "baseline max rel drift " + num(drift) + " (limit 1e-6)";
  }
  return {ok, detail};
}

Line bernstein_walsh(const Options&) {
  bool ok = true;
  double worst = INFINITY;
  for (const Built& b : constructions()) {
    const CheckRecord rec = bernstein_walsh_check(b.con.zeros.zeros, b.config.map, b.con.arcs.s());
    worst = std::min(worst, rec.slack);
    if (!rec.pass) ok = false;
  }
  return {ok, std::to_string(constructions().size()) + " configs, min log slack " + num(worst)};
}

Line oracle_sanity(const Options&) {
  const ExteriorMap ellipse = to_map(Ellipse{2.0, 1.0});
  auto samples = [&](int count) {
    std::vector<cplx> out(count);
    for (int k = 0; k < count; ++k) out[k] = psi(ellipse, std::polar(1.0, kTwoPi * k / count));
    return out;
  };
  const oracle::QuadraticFit fit = oracle::brute_force_quadratic(samples(256), samples(4096));
  const ChebResult r = lawson_chebyshev(ellipse, 2);
  const double rel = std::abs(r.norm_est - fit.norm) / fit.norm;
  return {rel <= 1e-3, "oracle norm " + num(r.norm_est) + ", grid search " + num(fit.norm) + ", rel diff " +
                           num(rel)};
}

Line determinism(const Options&) {
  const fs::path root = fs::temp_directory_path() / ("widom_acceptance_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  RunConfig cfg;
  cfg.domain = Ellipse{2.0, 1.0};
  cfg.q = 2;
  cfg.c = 4.0 * std::numbers::pi;
  cfg.m_list = {64, 96, 128};
  cfg.emit_zeros = true;
  std::vector<std::map<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    cfg.out_dir = root / std::to_string(run);
    fs::create_directories(cfg.out_dir);
    cmd_construct(cfg);
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(cfg.out_dir)) {
      if (entry.path().extension() != ".csv") continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      files[entry.path().filename().string()] = bytes.str();
    }
    runs.push_back(std::move(files));
  }
  fs::remove_all(root);
  const bool ok = !runs[0].empty() && runs[0] == runs[1] && runs[0].count("sweep.csv");
  return {ok, std::to_string(runs[0].size()) + " CSV files compared byte for byte"};
}

struct Criterion {
  const char* title;
  std::function<Line(const Options&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  Options opt;
  std::vector<int> only;
  app.add_flag("--update-baselines", opt.update, "rewrite the stored regression baselines");
  app.add_option("--data", opt.data, "baseline directory");
  app.add_option("--only", only, "criterion numbers to run");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"moment matching", moment_matching},
      {"coefficient and root bounds", root_bounds},
      {"zero location", zero_location},
      {"arc geometry chain (strict)", arc_chain},
      {"bounded Widom factors", widom_boundedness},
      {"disk exactness", disk_exactness},
      {"submultiplicativity", submultiplicativity},
      {"Green integral uniformity", green_uniformity},
      {"Bernstein-Walsh", bernstein_walsh},
      {"oracle sanity", oracle_sanity},
      {"determinism", determinism},
  };

  const std::set<int> selected(only.begin(), only.end());
  int failed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(number)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Line line;
    try {
      line = criteria[i].run(opt);
    } catch (const std::exception& ex) {
      line = {false, std::string("error: ") + ex.what()};
    }
    if (!line.pass) ++failed;
    std::cout << (line.pass ? "PASS" : "FAIL") << ' ' << (number < 10 ? " " : "") << number << ' '
              << criteria[i].title << " [" << num(std::round(seconds_since(t0) * 10) / 10) << " s]: "
              << line.detail << std::endl;
  }
  std::cout << (ran - failed) << '/' << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
