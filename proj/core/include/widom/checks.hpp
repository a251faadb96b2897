#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "widom/domain.hpp"

namespace widom {

enum class CheckStatus { pass, fail, skipped };

struct CheckEntry {
  std::string name;
  std::string ref;  // the inequality being checked, as text
  bool strict_mode_required = false;
  CheckStatus status = CheckStatus::fail;
  double measured_slack = 0.0;  // signed, negative = violated
  std::string details;

  bool pass() const noexcept { return status == CheckStatus::pass; }
};

struct CheckReport {
  nlohmann::json config;
  std::vector<CheckEntry> entries;

  /// No entry failed (skipped entries are fine).
  bool ok() const noexcept;
};

struct CheckOptions {
  int quad_order = 32;
  int boundary_n = 16384;
  int grid_factor = 8;
  double refine_tol = 1e-10;
  int samples = 200;            // random points for the distortion checks
  std::uint64_t seed = 20170611;
  int green_points = 64;
  int green_quad_order = 16;
};

/// Number of registered checks; every report has exactly this many entries.
inline constexpr int kCheckCount = 13;

/// Builds the outside-mode construction for (q, m, c) and evaluates every
/// registered inequality on it. Checks that need c = 480 pi and m > m0 are
/// skipped with a reason otherwise. Exceptions inside a check become failed
/// entries.
CheckReport run_all_checks(const ExteriorMap& map, int q, int m, double c,
                           const CheckOptions& options = {});

/// NAME | REF | PASS | SLACK table.
void print_summary(std::ostream& out, const CheckReport& report);

std::string to_string(CheckStatus status);

}  // namespace widom
