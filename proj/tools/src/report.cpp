#include "widom/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "widom/error.hpp"
#include "widom/format.hpp"
#include "widom/serialize.hpp"

namespace widom {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parameter, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorKind::parameter, "not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parameter, "not an integer: '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorKind::parameter, "not an integer: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::io, path.string() + ": " + ex.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

void RunConfig::validate() const {
  if (m_list.empty()) throw Error(ErrorKind::parameter, "m list is empty");
  if (!std::is_sorted(m_list.begin(), m_list.end()) ||
      std::adjacent_find(m_list.begin(), m_list.end()) != m_list.end()) {
    throw Error(ErrorKind::parameter, "m list must be strictly ascending");
  }
  if (q < 1) throw Error(ErrorKind::parameter, "q must be >= 1");
  if (grid_factor < 8) throw Error(ErrorKind::parameter, "grid factor must be >= 8");
  if (!(refine_tol > 0.0)) throw Error(ErrorKind::parameter, "refine tolerance must be positive");
}

json RunConfig::to_json() const {
  return {{"domain", domain_to_json(domain)},
          {"map", to_map(domain)},
          {"q", q},
          {"c", c},
          {"m_list", m_list},
          {"mode", to_string(mode)},
          {"quad_order", quad_order},
          {"grid_factor", grid_factor},
          {"refine_tol", refine_tol},
          {"n_list", n_list}};
}

double parse_c(const std::string& raw) {
  std::string text = trim(raw);
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    std::string factor = trim(text.substr(0, text.size() - 2));
    if (!factor.empty() && factor.back() == '*') factor = trim(factor.substr(0, factor.size() - 1));
    if (factor.empty() || factor == "+") return std::numbers::pi;
    if (factor == "-") return -std::numbers::pi;
    return parse_double(factor) * std::numbers::pi;
  }
  return parse_double(text);
}

std::vector<int> parse_int_list(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::parameter, "empty integer list");
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw Error(ErrorKind::parameter, "range must be start:stop:step");
    const int start = parse_int(parts[0]), stop = parse_int(parts[1]), step = parse_int(parts[2]);
    if (step <= 0) throw Error(ErrorKind::parameter, "range step must be positive");
    for (long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
  } else {
    for (const std::string& p : split(text, ',')) out.push_back(parse_int(p));
  }
  if (out.empty()) throw Error(ErrorKind::parameter, "empty integer list");
  return out;
}

DomainSpec parse_domain(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::parameter, "empty domain");
  if (text.front() == '@') return domain_from_json(read_json(text.substr(1)));
  if (text.front() == '{') {
    try {
      return domain_from_json(json::parse(text));
    } catch (const json::exception& ex) {
      throw Error(ErrorKind::parameter, std::string("domain JSON: ") + ex.what());
    }
  }
  std::string name = text;
  std::vector<std::string> args;
  if (const auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')') throw Error(ErrorKind::parameter, "unbalanced domain arguments: " + text);
    name = trim(text.substr(0, open));
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    if (!trim(inner).empty()) args = split(inner, ',');
  }
  const auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? parse_double(args[i]) : fallback; };
  if (name == "disk") {
    if (args.size() > 1) throw Error(ErrorKind::parameter, "disk takes one argument");
    return Disk{arg(0, 1.0)};
  }
  if (name == "ellipse") {
    if (args.size() == 1 || args.size() > 2) throw Error(ErrorKind::parameter, "ellipse takes (a, b)");
    return Ellipse{arg(0, 2.0), arg(1, 1.0)};
  }
  if (name == "hypocycloid") {
    if (args.size() == 1 || args.size() > 2) throw Error(ErrorKind::parameter, "hypocycloid takes (cusps, strength)");
    return Hypocycloid{args.empty() ? 3 : parse_int(args[0]), arg(1, 0.25)};
  }
  throw Error(ErrorKind::parameter, "unknown domain '" + name + "'");
}

bool Sweep::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.report.has_value(); });
}

Sweep run_sweep(const RunConfig& config) {
  config.validate();
  const ExteriorMap map = to_map(config.domain);
  Sweep sweep{config, {}};
  for (const int m : config.m_list) {
    SweepRow row;
    row.m = m;
    try {
      ZeroMultiset zeros = build(config.mode, map, config.q, m, config.c, config.quad_order);
      WidomReport rep = widom_factor(zeros, config.grid_factor * zeros.degree(), config.refine_tol);
      row.report = rep;
      if (config.emit_zeros) row.zeros = std::move(zeros);
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

void write_sweep_csv(std::ostream& out, const Sweep& sweep) {
  out << "# config: " << sweep.config.to_json().dump() << '\n';
  out << "n,m,q,c,s,mode,widom,log_sup,argmax_theta,grid\n";
  const RunConfig& cfg = sweep.config;
  for (const SweepRow& row : sweep.rows) {
    if (row.report) {
      const WidomReport& r = *row.report;
      out << r.n << ',' << r.m << ',' << r.q << ',' << fmt_num(r.c) << ',' << fmt_num(r.s) << ',' << r.mode
          << ',' << fmt_num(r.widom) << ',' << fmt_num(r.log_sup) << ',' << fmt_num(r.argmax_theta) << ','
          << r.grid_size << '\n';
    } else {
      const double s = cfg.c * cfg.q / row.m;
      out << cfg.q * row.m << ',' << row.m << ',' << cfg.q << ',' << fmt_num(cfg.c) << ',' << fmt_num(s)
          << ',' << to_string(cfg.mode) << ",nan,nan,nan,0\n";
    }
  }
}

json sweep_to_json(const Sweep& sweep) {
  json rows = json::array();
  for (const SweepRow& row : sweep.rows) {
    if (row.report) {
      rows.push_back(widom_to_json(*row.report));
    } else {
      rows.push_back({{"m", row.m}, {"error", row.error}});
    }
  }
  return {{"schema", kSchemaVersion}, {"config", sweep.config.to_json()}, {"ok", sweep.ok()}, {"rows", rows}};
}

Sweep cmd_construct(const RunConfig& config) {
  Sweep sweep = run_sweep(config);
  std::ostringstream csv;
  write_sweep_csv(csv, sweep);
  write_file(config.out_dir / "sweep.csv", csv.str());
  write_file(config.out_dir / "sweep.json", dump(sweep_to_json(sweep)));
  if (config.emit_zeros) {
    for (const SweepRow& row : sweep.rows) {
      if (!row.zeros) continue;
      json j = zeros_to_json(*row.zeros);
      j["config"] = config.to_json();
      const std::string stem = "zeros_m" + std::to_string(row.m);
      write_file(config.out_dir / (stem + ".json"), dump(j));
      std::ostringstream zcsv;
      write_zeros_csv(zcsv, *row.zeros);
      write_file(config.out_dir / (stem + ".csv"), zcsv.str());
    }
  }
  return sweep;
}

std::vector<CheckReport> cmd_check(const RunConfig& config, std::ostream& out, const CheckOptions& options) {
  config.validate();
  const ExteriorMap map = to_map(config.domain);
  CheckOptions opt = options;
  opt.quad_order = config.quad_order;
  opt.grid_factor = config.grid_factor;
  opt.refine_tol = config.refine_tol;
  std::vector<CheckReport> reports;
  for (const int m : config.m_list) {
    CheckReport report = run_all_checks(map, config.q, m, config.c, opt);
    json j = check_report_to_json(report);
    j["run_config"] = config.to_json();
    write_file(config.out_dir / ("check_m" + std::to_string(m) + ".json"), dump(j));
    out << "m = " << m << '\n';
    print_summary(out, report);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<OracleRow> cmd_oracle(const RunConfig& config) {
  if (config.n_list.empty()) throw Error(ErrorKind::parameter, "n list is empty");
  const ExteriorMap map = to_map(config.domain);
  BracketOptions bopt;
  bopt.q = config.q;
  bopt.mode = config.mode;
  std::vector<OracleRow> rows;
  json results = json::array();
  std::ostringstream csv;
  csv << "# config: " << config.to_json().dump() << '\n';
  csv << "n,lower,upper,upper_lawson,upper_constructed\n";
  for (const int n : config.n_list) {
    OracleRow row;
    row.n = n;
    try {
      row.cheb = lawson_chebyshev(map, n, bopt.lawson);
      row.bracket = widom_lower_upper(map, n, bopt);
      json j = cheb_to_json(*row.cheb);
      j["lower"] = row.bracket->lower;
      j["upper"] = row.bracket->upper;
      results.push_back(j);
      const WidomBracket& b = *row.bracket;
      csv << n << ',' << fmt_num(b.lower) << ',' << fmt_num(b.upper) << ',' << fmt_num(b.upper_lawson) << ','
          << (b.upper_constructed ? fmt_num(*b.upper_constructed) : std::string()) << '\n';
    } catch (const std::exception& ex) {
      row.error = ex.what();
      results.push_back({{"n", n}, {"error", row.error}});
      csv << n << ",nan,nan,nan,\n";
    }
    rows.push_back(std::move(row));
  }
  write_file(config.out_dir / "oracle.json",
             dump({{"schema", kSchemaVersion}, {"config", config.to_json()}, {"results", results}}));
  write_file(config.out_dir / "bracket.csv", csv.str());
  return rows;
}

json baseline_from_sweep(const Sweep& sweep) {
  json rows = json::array();
  for (const SweepRow& row : sweep.rows) {
    if (!row.report) {
      rows.push_back({{"m", row.m}, {"error", row.error}});
      continue;
    }
    rows.push_back({{"m", row.m},
                    {"n", row.report->n},
                    {"widom", std::isfinite(row.report->widom) ? json(row.report->widom) : json(nullptr)},
                    {"log_widom", row.report->log_widom()}});
  }
  return {{"schema", kSchemaVersion}, {"config", sweep.config.to_json()}, {"rows", rows}};
}

BaselineDiff compare_baseline(const Sweep& sweep, const json& baseline) {
  BaselineDiff diff;
  const json& rows = baseline.at("rows");
  for (const SweepRow& row : sweep.rows) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const json& r) { return r.value("m", -1) == row.m; });
    if (it == rows.end()) {
      diff.ok = false;
      diff.messages.push_back("m=" + std::to_string(row.m) + ": not in baseline");
      continue;
    }
    const bool stored = it->contains("log_widom");
    if (!row.report || !stored) {
      if (row.report.has_value() != stored) {
        diff.ok = false;
        diff.messages.push_back("m=" + std::to_string(row.m) + ": success differs from baseline");
      }
      continue;
    }
    // widom overflows to inf in some outside-mode runs; compare logs there
    const json& ref = it->at("widom");
    const bool use_log = !std::isfinite(row.report->widom) || ref.is_null();
    const double a = use_log ? row.report->log_widom() : row.report->widom;
    const double b = use_log ? it->at("log_widom").get<double>() : ref.get<double>();
    const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    diff.max_rel = std::max(diff.max_rel, rel);
    if (!(rel <= kBaselineTol)) {
      diff.ok = false;
      diff.messages.push_back("m=" + std::to_string(row.m) + ": " + fmt_num(a) + " vs baseline " + fmt_num(b) +
                              " (rel " + fmt_num(rel) + ")");
    }
  }
  return diff;
}

BaselineDiff cmd_baseline(const RunConfig& config, bool update) {
  if (config.baseline.empty()) throw Error(ErrorKind::parameter, "no baseline path given");
  const Sweep sweep = run_sweep(config);
  if (update) {
    write_file(config.baseline, dump(baseline_from_sweep(sweep)));
    BaselineDiff diff;
    diff.created = true;
    diff.ok = sweep.ok();
    return diff;
  }
  if (!fs::exists(config.baseline)) throw Error(ErrorKind::io, "baseline " + config.baseline.string() + " missing");
  return compare_baseline(sweep, read_json(config.baseline));
}

}  // namespace widom
