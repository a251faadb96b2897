#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "widom/cheb_oracle.hpp"
#include "widom/checks.hpp"
#include "widom/construct.hpp"
#include "widom/domain.hpp"
#include "widom/norms.hpp"

// JSON forms. Complex numbers are [re, im] pairs everywhere.
namespace widom {

inline constexpr int kSchemaVersion = 1;

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const ExteriorMap& map);
void from_json(const nlohmann::json& j, ExteriorMap& map);

/// {"kind": "disk", "radius": r}, {"kind": "ellipse", "a": a, "b": b},
/// {"kind": "hypocycloid", "cusps": k, "strength": t},
/// {"kind": "laurent", "cap": c, "center": [re, im], "tail": [[re, im], ...], "rho_min": r}.
nlohmann::json domain_to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const nlohmann::json& j);

nlohmann::json provenance_to_json(const Provenance& p);

/// {"schema", "n", "mode", "delta", "provenance", "zeros": [[re, im], ...], "arc": [...]}
nlohmann::json zeros_to_json(const ZeroMultiset& zeros);
ZeroMultiset zeros_from_json(const nlohmann::json& j);

/// Provenance comment line, then j,k,re,im with 1-based arc j and index k
/// within the arc.
void write_zeros_csv(std::ostream& out, const ZeroMultiset& zeros);

nlohmann::json widom_to_json(const WidomReport& rep);
nlohmann::json cheb_to_json(const ChebResult& res);
nlohmann::json check_report_to_json(const CheckReport& report);

}  // namespace widom
