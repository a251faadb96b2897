#include "widom/serialize.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <string>

#include "widom/error.hpp"
#include "widom/format.hpp"

namespace widom {

using nlohmann::json;

namespace {

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::io, std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::io, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const ExteriorMap& map) {
  json tail = json::array();
  for (const cplx& a : map.tail) tail.push_back(complex_to_json(a));
  j = json{{"cap", map.cap},
           {"center", complex_to_json(map.center)},
           {"tail", tail},
           {"rho_min", map.rho_min}};
}

void from_json(const json& j, ExteriorMap& map) {
  map.cap = required<double>(j, "cap");
  map.center = j.contains("center") ? complex_from_json(j.at("center")) : cplx(0.0, 0.0);
  map.tail.clear();
  if (j.contains("tail")) {
    for (const json& a : j.at("tail")) map.tail.push_back(complex_from_json(a));
  }
  map.rho_min = required<double>(j, "rho_min");
}

json domain_to_json(const DomainSpec& spec) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {{"kind", "disk"}, {"radius", d.radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return {{"kind", "ellipse"}, {"a", d.semi_major}, {"b", d.semi_minor}};
        } else if constexpr (std::is_same_v<T, Hypocycloid>) {
          return {{"kind", "hypocycloid"}, {"cusps", d.cusps}, {"strength", d.strength}};
        } else {
          json j = d.map;
          j["kind"] = "laurent";
          return j;
        }
      },
      spec);
}

DomainSpec domain_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::io, "domain must be a JSON object");
  const std::string kind = required<std::string>(j, "kind");
  if (kind == "disk") return Disk{j.value("radius", 1.0)};
  if (kind == "ellipse") return Ellipse{required<double>(j, "a"), required<double>(j, "b")};
  if (kind == "hypocycloid") {
    return Hypocycloid{required<int>(j, "cusps"), required<double>(j, "strength")};
  }
  if (kind == "laurent") return Laurent{j.get<ExteriorMap>()};
  throw Error(ErrorKind::io, "unknown domain kind '" + kind + "'");
}

json provenance_to_json(const Provenance& p) {
  return {{"m", p.m}, {"q", p.q}, {"c", p.c}, {"s", p.s}, {"strict", p.strict},
          {"quad_order", p.quad_order}};
}

json zeros_to_json(const ZeroMultiset& zeros) {
  json pts = json::array();
  for (const cplx& z : zeros.zeros) pts.push_back(complex_to_json(z));
  json prov = provenance_to_json(zeros.provenance);
  prov["domain"] = zeros.map;
  json j{{"schema", kSchemaVersion},
         {"n", zeros.degree()},
         {"mode", to_string(zeros.mode)},
         {"delta", zeros.delta},
         {"provenance", prov},
         {"zeros", pts},
         {"arc", zeros.arc}};
  if (!zeros.shrink_trace.empty()) {
    json trace = json::array();
    for (const ShrinkStep& s : zeros.shrink_trace) {
      trace.push_back({{"delta", s.delta}, {"feasible", s.feasible}, {"max_level", number(s.max_level)}});
    }
    j["shrink_trace"] = trace;
  }
  return j;
}

ZeroMultiset zeros_from_json(const json& j) {
  ZeroMultiset out;
  out.mode = parse_mode(required<std::string>(j, "mode"));
  out.delta = j.value("delta", 0.0);
  for (const json& z : j.at("zeros")) out.zeros.push_back(complex_from_json(z));
  if (j.contains("arc")) out.arc = j.at("arc").get<std::vector<int>>();
  const json& prov = j.at("provenance");
  out.provenance.m = prov.value("m", 0);
  out.provenance.q = prov.value("q", 0);
  out.provenance.c = prov.value("c", 0.0);
  out.provenance.s = prov.value("s", 0.0);
  out.provenance.strict = prov.value("strict", false);
  out.provenance.quad_order = prov.value("quad_order", 32);
  out.map = prov.at("domain").get<ExteriorMap>();
  if (required<int>(j, "n") != out.degree()) throw Error(ErrorKind::io, "zero count does not match n");
  return out;
}

void write_zeros_csv(std::ostream& out, const ZeroMultiset& zeros) {
  json prov = provenance_to_json(zeros.provenance);
  prov["mode"] = to_string(zeros.mode);
  prov["delta"] = zeros.delta;
  prov["domain"] = zeros.map;
  out << "# provenance: " << prov.dump() << '\n';
  out << "j,k,re,im\n";
  std::map<int, int> seen;
  for (std::size_t i = 0; i < zeros.zeros.size(); ++i) {
    const int arc = i < zeros.arc.size() ? zeros.arc[i] : -1;
    const int k = ++seen[arc];
    out << (arc >= 0 ? arc + 1 : 0) << ',' << k << ',' << fmt_num(zeros.zeros[i].real()) << ','
        << fmt_num(zeros.zeros[i].imag()) << '\n';
  }
}

json widom_to_json(const WidomReport& rep) {
  return {{"n", rep.n},
          {"m", rep.m},
          {"q", rep.q},
          {"c", rep.c},
          {"s", rep.s},
          {"mode", rep.mode},
          {"widom", number(rep.widom)},
          {"log_widom", number(rep.log_widom())},
          {"log_sup", number(rep.log_sup)},
          {"log_cap_n", rep.log_cap_n},
          {"argmax_theta", rep.argmax_theta},
          {"grid", rep.grid_size},
          {"refine_tol", rep.refinement_tol}};
}

json cheb_to_json(const ChebResult& res) {
  json coeffs = json::array();
  for (const cplx& c : res.coeffs) coeffs.push_back(complex_to_json(c));
  return {{"schema", kSchemaVersion},
          {"n", res.n},
          {"coeffs", coeffs},
          {"norm_est", number(res.norm_est)},
          {"lower_bound", number(res.lower_bound)},
          {"grid_size", res.grid_size},
          {"lawson_iters", res.lawson_iters},
          {"exchange_rounds", res.exchange_rounds},
          {"sample_count", res.sample_count},
          {"residual_spread", res.residual_spread}};
}

json check_report_to_json(const CheckReport& report) {
  json entries = json::array();
  for (const CheckEntry& e : report.entries) {
    entries.push_back({{"name", e.name},
                       {"ref", e.ref},
                       {"strict_mode_required", e.strict_mode_required},
                       {"status", to_string(e.status)},
                       {"pass", e.pass()},
                       {"measured_slack", number(e.measured_slack)},
                       {"details", e.details}});
  }
  return {{"schema", kSchemaVersion}, {"config", report.config}, {"ok", report.ok()}, {"entries", entries}};
}

}  // namespace widom
