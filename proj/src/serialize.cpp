#include "paleytk/serialize.hpp"

#include <string>

namespace paleytk {

using nlohmann::json;

json field_to_json(const Field& field) {
  return json{{"p", field.p()},
              {"r", field.r()},
              {"q", field.q()},
              {"modulus", field.modulus()}};
}

json clique_to_json(const Clique& clique) {
  return json{{"q", clique.q},
              {"vertices", clique.vertices},
              {"exact", clique.exact}};
}

Clique clique_from_json(const json& j) {
  Clique c;
  c.q = j.at("q").get<std::int64_t>();
  c.vertices = j.at("vertices").get<std::vector<std::int64_t>>();
  c.exact = j.at("exact").get<bool>();
  return c;
}

json certificate_to_json(const StepanovCertificate& cert) {
  Field field = Field::build(cert.p, cert.r);
  json j;
  j["field"] = field_to_json(field);
  j["clique"] = clique_to_json(cert.clique);
  j["n"] = cert.n;
  std::vector<std::int64_t> coeff_labels;
  for (const FieldElem& c : cert.coefficients) {
    coeff_labels.push_back(field.label_of(c));
  }
  j["coefficients"] = coeff_labels;
  j["claimed_degree"] = cert.claimed_degree;
  if (cert.f) {
    std::vector<std::int64_t> f_labels;
    for (const FieldElem& c : cert.f->coeffs()) {
      f_labels.push_back(field.label_of(c));
    }
    j["f"] = f_labels;
  } else {
    j["f"] = nullptr;
  }
  json mults = json::array();
  for (auto [v, m] : cert.multiplicities) {
    mults.push_back(json::array({v, m}));
  }
  j["multiplicities"] = mults;
  j["conclusion"] = json{{"lhs", cert.conclusion_lhs},
                         {"rhs", cert.conclusion_rhs}};
  j["version"] = kToolkitVersion;
  return j;
}

StepanovCertificate certificate_from_json(const json& j) {
  StepanovCertificate cert;
  const json& fd = j.at("field");
  cert.p = fd.at("p").get<std::int64_t>();
  cert.r = fd.at("r").get<int>();
  Field field = Field::build(cert.p, cert.r);
  cert.q = field.q();
  if (fd.at("q").get<std::int64_t>() != field.q() ||
      fd.at("modulus").get<std::vector<std::int64_t>>() != field.modulus()) {
    raise("FieldMismatch", "stored field does not match the canonical build");
  }
  cert.clique = clique_from_json(j.at("clique"));
  cert.n = j.at("n").get<std::int64_t>();
  for (std::int64_t l : j.at("coefficients").get<std::vector<std::int64_t>>()) {
    cert.coefficients.push_back(field.elem_of(l));
  }
  cert.claimed_degree = j.at("claimed_degree").get<std::int64_t>();
  if (!j.at("f").is_null()) {
    cert.f = PolyFq::from_labels(
        field, j.at("f").get<std::vector<std::int64_t>>());
  }
  for (const json& pair : j.at("multiplicities")) {
    cert.multiplicities.emplace_back(pair.at(0).get<std::int64_t>(),
                                     pair.at(1).get<std::int64_t>());
  }
  cert.conclusion_lhs = j.at("conclusion").at("lhs").get<std::int64_t>();
  cert.conclusion_rhs = j.at("conclusion").at("rhs").get<std::int64_t>();
  return cert;
}

json report_to_json(const CertificateReport& report) {
  json checks = json::array();
  for (const CertCheck& c : report.checks) {
    checks.push_back(json{{"name", c.name},
                          {"passed", c.passed},
                          {"detail", c.detail}});
  }
  return json{{"passed", report.all_passed},
              {"checks", checks},
              {"total_multiplicity", report.total_multiplicity},
              {"degree", report.degree}};
}

json bound_report_to_json(const BoundReport& report) {
  json entries = json::array();
  for (const BoundEntry& e : report.entries) {
    entries.push_back(json{{"name", e.name},
                           {"value", e.value},
                           {"inequality", e.inequality}});
  }
  json j{{"q", report.q}, {"p", report.p}, {"r", report.r},
         {"entries", entries}};
  if (report.omega) {
    j["omega"] = json{{"value", report.omega->value},
                      {"exact", report.omega->exact},
                      {"provenance", report.omega->provenance}};
  } else {
    j["omega"] = nullptr;
  }
  if (!report.main_closed_form_display.empty()) {
    j["main_closed_form_display"] = report.main_closed_form_display;
  }
  return j;
}

json variant_report_to_json(const VariantReport& report) {
  json j{{"q", report.q},
         {"n", report.n},
         {"m", report.m},
         {"D", report.D},
         {"L", report.L},
         {"zero_in_L", report.zero_in_L},
         {"solvable", report.solvable},
         {"multiplicities_verified", report.multiplicities_verified},
         {"f_degree", report.f_degree}};
  if (report.conclusion_lhs) {
    j["conclusion"] = json{{"lhs", *report.conclusion_lhs},
                           {"rhs", *report.conclusion_rhs}};
  } else {
    j["conclusion"] = nullptr;
  }
  return j;
}

json scan_report_to_json(const ConjectureScanReport& report) {
  json verdicts = json::array();
  for (const ScanVerdict& v : report.verdicts) {
    verdicts.push_back(json{{"m", v.m}, {"independent", v.independent}});
  }
  json j{{"q", report.q},
         {"p", report.p},
         {"s", report.s},
         {"n", report.n},
         {"clique_size", report.clique_size},
         {"L", report.L},
         {"zero_in_L", report.zero_in_L},
         {"M_size", report.M_size},
         {"verdicts", verdicts},
         {"exists_independent", report.exists_independent},
         {"digit_lemma_ok", report.digit_lemma_ok},
         {"digit_lemma_violations", report.digit_lemma_violations},
         {"shape_matches", report.shape_matches}};
  if (report.variant) {
    j["variant"] = variant_report_to_json(*report.variant);
  } else {
    j["variant"] = nullptr;
  }
  if (!report.conditional_note.empty()) {
    j["conditional_note"] = report.conditional_note;
  }
  return j;
}

}  // namespace paleytk
