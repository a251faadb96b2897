#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "widom/cheb_oracle.hpp"
#include "widom/checks.hpp"
#include "widom/construct.hpp"
#include "widom/domain.hpp"
#include "widom/norms.hpp"

namespace widom {

struct RunConfig {
  DomainSpec domain = Disk{1.0};
  int q = 2;
  double c = kStrictC;
  std::vector<int> m_list;
  PlacementMode mode = PlacementMode::shrunk;
  int quad_order = 32;
  int grid_factor = 8;
  double refine_tol = 1e-10;
  std::filesystem::path out_dir = ".";
  bool emit_zeros = false;
  std::filesystem::path baseline;
  std::vector<int> n_list;  // oracle degrees

  /// Throws ErrorKind::parameter on an empty or unsorted m list, q < 1 or
  /// grid_factor < 8.
  void validate() const;
  nlohmann::json to_json() const;
};

/// "480pi", "4pi", "pi", "-2.5pi" or a plain number.
double parse_c(const std::string& text);

/// "64,128,256" or "start:stop:step" (stop inclusive).
std::vector<int> parse_int_list(const std::string& text);

/// JSON object text, a registry name such as "disk", "ellipse(2,1)",
/// "hypocycloid(3,0.25)", or "@path" to a JSON file.
DomainSpec parse_domain(const std::string& text);

struct SweepRow {
  int m = 0;
  std::optional<WidomReport> report;
  std::optional<ZeroMultiset> zeros;
  std::string error;
};

struct Sweep {
  RunConfig config;
  std::vector<SweepRow> rows;

  bool ok() const;
};

/// Builds and measures every m of the list. Failures land in the row and the
/// sweep continues.
Sweep run_sweep(const RunConfig& config);

/// Provenance comment line, then n,m,q,c,s,mode,widom,log_sup,argmax_theta,grid.
void write_sweep_csv(std::ostream& out, const Sweep& sweep);
nlohmann::json sweep_to_json(const Sweep& sweep);

/// Writes sweep.csv, sweep.json and (with emit_zeros) zeros_m<m>.json into
/// out_dir, plus zeros_m<m>.csv. Returns the sweep.
Sweep cmd_construct(const RunConfig& config);

/// One check report per m, written to check_m<m>.json; summary tables go to out.
std::vector<CheckReport> cmd_check(const RunConfig& config, std::ostream& out,
                                   const CheckOptions& options = {});

struct OracleRow {
  int n = 0;
  std::optional<ChebResult> cheb;
  std::optional<WidomBracket> bracket;
  std::string error;
};

/// Lawson oracle and Widom bracket per n; writes oracle.json and bracket.csv.
std::vector<OracleRow> cmd_oracle(const RunConfig& config);

struct BaselineDiff {
  bool created = false;
  bool ok = true;
  double max_rel = 0.0;
  std::vector<std::string> messages;
};

inline constexpr double kBaselineTol = 1e-6;

/// Compares a sweep to the stored baseline (widom values, relative); update
/// rewrites the file instead.
BaselineDiff compare_baseline(const Sweep& sweep, const nlohmann::json& baseline);
nlohmann::json baseline_from_sweep(const Sweep& sweep);
BaselineDiff cmd_baseline(const RunConfig& config, bool update);

}  // namespace widom
