#pragma once

#include <json.hpp>

#include "paleytk/bounds.hpp"
#include "paleytk/ffield.hpp"
#include "paleytk/paley.hpp"
#include "paleytk/stepanov.hpp"

namespace paleytk {

// FieldDesc: {"p":..., "r":..., "q":..., "modulus":[c0,...,cr]}
nlohmann::json field_to_json(const Field& field);

// Clique: {"q":..., "vertices":[...], "exact":bool}
nlohmann::json clique_to_json(const Clique& clique);
Clique clique_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const StepanovCertificate& cert);
/// Rebuilds the canonical field for (p, r) and decodes; the stored modulus
/// must match the canonical one.
StepanovCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CertificateReport& report);
nlohmann::json bound_report_to_json(const BoundReport& report);
nlohmann::json variant_report_to_json(const VariantReport& report);
nlohmann::json scan_report_to_json(const ConjectureScanReport& report);

}  // namespace paleytk
