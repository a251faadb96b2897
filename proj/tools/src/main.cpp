#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "widom/error.hpp"
#include "widom/report.hpp"

namespace {

struct Flags {
  std::string domain = "disk";
  int q = 2;
  std::string c = "480pi";
  std::string m;
  std::string n;
  std::string mode = "shrunk";
  int quad_order = 32;
  int grid_factor = 8;
  double refine_tol = 1e-10;
  std::string out = ".";
  bool emit_zeros = false;
  std::string baseline;
  bool update_baseline = false;
};

void add_common(CLI::App* cmd, Flags& f, bool needs_m) {
  cmd->add_option("--domain", f.domain, "JSON object, registry name such as ellipse(2,1), or @file");
  cmd->add_option("--q", f.q, "zeros per arc");
  cmd->add_option("--c", f.c, "level constant, e.g. 480pi, 4pi or a number");
  auto* m = cmd->add_option("--m", f.m, "arc counts: comma list or start:stop:step");
  if (needs_m) m->required();
  cmd->add_option("--mode", f.mode, "outside | shrunk | projected");
  cmd->add_option("--quad-order", f.quad_order, "Gauss-Legendre nodes per arc");
  cmd->add_option("--grid-factor", f.grid_factor, "sup-norm grid = factor * n (>= 8)");
  cmd->add_option("--refine-tol", f.refine_tol, "golden-section theta tolerance");
  cmd->add_option("--out", f.out, "output directory");
}

widom::RunConfig to_config(const Flags& f) {
  widom::RunConfig cfg;
  cfg.domain = widom::parse_domain(f.domain);
  cfg.q = f.q;
  cfg.c = widom::parse_c(f.c);
  if (!f.m.empty()) cfg.m_list = widom::parse_int_list(f.m);
  if (!f.n.empty()) cfg.n_list = widom::parse_int_list(f.n);
  cfg.mode = widom::parse_mode(f.mode);
  cfg.quad_order = f.quad_order;
  cfg.grid_factor = f.grid_factor;
  cfg.refine_tol = f.refine_tol;
  cfg.out_dir = f.out;
  cfg.emit_zeros = f.emit_zeros;
  cfg.baseline = f.baseline;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Widom factors of constructed polynomials on quasidisks"};
  app.require_subcommand(1);
  Flags f;

  auto* construct = app.add_subcommand("construct", "sweep m, write sweep.csv / sweep.json");
  add_common(construct, f, true);
  construct->add_flag("--emit-zeros", f.emit_zeros, "write zeros_m<m>.json per run");

  auto* check = app.add_subcommand("check", "run every registered inequality check");
  add_common(check, f, true);

  auto* oracle = app.add_subcommand("oracle", "Lawson Chebyshev oracle and Widom brackets");
  add_common(oracle, f, false);
  oracle->add_option("--n", f.n, "degrees: comma list or start:stop:step")->required();

  auto* baseline = app.add_subcommand("baseline", "compare a sweep against a stored baseline");
  add_common(baseline, f, true);
  baseline->add_option("--baseline", f.baseline, "baseline JSON file")->required();
  baseline->add_flag("--update-baseline", f.update_baseline, "rewrite the baseline instead of comparing");

  CLI11_PARSE(app, argc, argv);

  try {
    const widom::RunConfig cfg = to_config(f);
    if (construct->parsed()) {
      const widom::Sweep sweep = widom::cmd_construct(cfg);
      for (const auto& row : sweep.rows) {
        if (!row.report) std::cerr << "m=" << row.m << ": " << row.error << '\n';
      }
      return sweep.ok() ? 0 : 1;
    }
    if (check->parsed()) {
      bool ok = true;
      for (const auto& report : widom::cmd_check(cfg, std::cout)) ok = ok && report.ok();
      return ok ? 0 : 1;
    }
    if (oracle->parsed()) {
      bool ok = true;
      for (const auto& row : widom::cmd_oracle(cfg)) {
        if (!row.error.empty()) {
          std::cerr << "n=" << row.n << ": " << row.error << '\n';
          ok = false;
        }
      }
      return ok ? 0 : 1;
    }
    const widom::BaselineDiff diff = widom::cmd_baseline(cfg, f.update_baseline);
    for (const auto& msg : diff.messages) std::cerr << msg << '\n';
    if (diff.created) std::cout << "baseline written to " << cfg.baseline.string() << '\n';
    else std::cout << "max relative drift " << diff.max_rel << '\n';
    return diff.ok ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
}
