// Command-line front end: field construction, residue sets, exact and greedy
// clique numbers with a persistent results store, integer-exact bound tables,
// and polynomial certificate construction/verification.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "paleytk/bounds.hpp"
#include "paleytk/digits.hpp"
#include "paleytk/intmath.hpp"
#include "paleytk/paley.hpp"
#include "paleytk/serialize.hpp"
#include "paleytk/stepanov.hpp"
#include "paleytk/store.hpp"

namespace {

using namespace paleytk;
using nlohmann::json;

std::vector<std::int64_t> parse_label_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      raise("Usage", "label list must be comma-separated integers: " + csv);
    }
    out.push_back(std::stoll(item));
  }
  return out;
}

Field field_for_q(std::int64_t q) {
  auto [p, r] = factor_prime_power(q);
  return Field::build(p, r);
}

StoreRow make_row(const Field& field, const Clique& clique,
                  const std::string& method) {
  StoreRow row;
  row.q = field.q();
  row.p = field.p();
  row.r = field.r();
  row.omega = clique.size();
  row.exact = clique.exact;
  row.method = method;
  row.witness_json = clique_to_json(clique).dump();
  row.timestamp = utc_timestamp();
  row.version = kToolkitVersion;
  return row;
}

// Exact omega from the store, else computed (and recorded) when q is small
// enough to search on the spot.
std::optional<OmegaInfo> omega_for_bounds(std::int64_t q,
                                          const std::string& store_path) {
  ResultsStore store(store_path);
  if (auto row = store.best_for(q); row && row->exact) {
    return OmegaInfo{row->omega, true, "store"};
  }
  if (q > 10'000) return std::nullopt;
  Field field = field_for_q(q);
  PaleyGraph graph = PaleyGraph::build(field);
  MaxCliqueResult result = max_clique(graph);
  if (!result.completed) return std::nullopt;
  store.record(make_row(field, result.clique, "bnb"));
  return OmegaInfo{result.clique.size(), true, "search"};
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Paley graph toolkit: fields, cliques, bounds, "
               "polynomial certificates"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);
  std::string store_path = ResultsStore::default_path();
  app.add_option("--store", store_path, "results store path")
      ->envname("PALEY_STORE");

  // field p r
  auto* cmd_field = app.add_subcommand("field", "print the field description");
  std::int64_t arg_p = 0;
  int arg_r = 1;
  cmd_field->add_option("p", arg_p, "characteristic")->required();
  cmd_field->add_option("r", arg_r, "extension degree")->required();

  // qr q
  auto* cmd_qr = app.add_subcommand("qr", "print the quadratic residue set");
  std::int64_t arg_q = 0;
  cmd_qr->add_option("q", arg_q, "field size")->required();

  // omega q
  auto* cmd_omega = app.add_subcommand("omega", "clique number of P_q");
  std::int64_t omega_q = 0;
  std::uint64_t budget = MaxCliqueOptions{}.node_budget;
  bool heuristic = false;
  std::uint64_t seed = 0;
  int threads = 1;
  bool no_symmetry = false;
  std::string omega_format = "human";
  cmd_omega->add_option("q", omega_q, "field size")->required();
  cmd_omega->add_option("--budget", budget, "search node budget");
  cmd_omega->add_flag("--heuristic", heuristic, "greedy maximal clique only");
  cmd_omega->add_option("--seed", seed, "seed for randomized paths");
  cmd_omega->add_option("--threads", threads, "worker threads");
  cmd_omega->add_flag("--no-symmetry", no_symmetry,
                      "disable the {0,1} symmetry reduction");
  cmd_omega->add_option("--format", omega_format, "human|json")
      ->check(CLI::IsMember({"human", "json"}));

  // bounds q | bounds --sweep qmin qmax
  auto* cmd_bounds = app.add_subcommand("bounds", "upper bound table");
  std::int64_t bounds_q = 0;
  std::vector<std::int64_t> sweep;
  std::string bounds_format = "table";
  cmd_bounds->add_option("q", bounds_q, "field size");
  cmd_bounds->add_option("--sweep", sweep, "qmin qmax")->expected(2);
  cmd_bounds->add_option("--format", bounds_format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  bool no_omega = false;
  cmd_bounds->add_flag("--no-omega", no_omega, "skip omega lookup/search");

  // certify q --clique ... --n ...
  auto* cmd_certify =
      app.add_subcommand("certify", "build and verify a certificate");
  std::int64_t certify_q = 0, certify_n = 0;
  std::string certify_clique, certify_out;
  cmd_certify->add_option("q", certify_q, "field size")->required();
  cmd_certify->add_option("--clique", certify_clique, "comma-separated labels")
      ->required();
  cmd_certify->add_option("--n", certify_n, "certificate parameter n")
      ->required();
  cmd_certify->add_option("--out", certify_out, "write certificate JSON here");

  // verify-cert file
  auto* cmd_verify = app.add_subcommand("verify-cert",
                                        "re-verify a certificate file");
  std::string verify_file;
  cmd_verify->add_option("file", verify_file, "certificate JSON")->required();

  // scan-conjecture q --n N [--clique ...|--greedy seed] [--strict]
  auto* cmd_scan = app.add_subcommand("scan-conjecture",
                                      "moment-matrix rank scan over M");
  std::int64_t scan_q = 0, scan_n = 0;
  std::string scan_clique;
  std::int64_t greedy_seed = -1;
  bool strict = false;
  int scan_threads = 1;
  cmd_scan->add_option("q", scan_q, "field size")->required();
  cmd_scan->add_option("--n", scan_n, "parameter n")->required();
  cmd_scan->add_option("--clique", scan_clique, "comma-separated labels");
  cmd_scan->add_option("--greedy", greedy_seed, "greedy clique from this seed");
  cmd_scan->add_flag("--strict", strict, "require the prescribed digit form");
  cmd_scan->add_option("--threads", scan_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (cmd_field->parsed()) {
    Field field = Field::build(arg_p, arg_r);
    std::cout << field_to_json(field).dump() << '\n';
    return 0;
  }

  if (cmd_qr->parsed()) {
    Field field = field_for_q(arg_q);
    std::cout << json(field.quadratic_residue_labels()).dump() << '\n';
    return 0;
  }

  if (cmd_omega->parsed()) {
    Field field = field_for_q(omega_q);
    PaleyGraph graph = PaleyGraph::build(field);
    ResultsStore store(store_path);
    Clique clique;
    std::string method;
    bool completed = true;
    std::uint64_t nodes = 0;
    if (heuristic) {
      clique = greedy_clique(graph, seed);
      method = "greedy";
    } else {
      MaxCliqueOptions options;
      options.node_budget = budget;
      options.threads = threads;
      options.symmetry_reduction = !no_symmetry;
      MaxCliqueResult result = max_clique(graph, options);
      clique = result.clique;
      completed = result.completed;
      nodes = result.nodes_explored;
      method = completed ? "bnb" : "bnb-budget";
    }
    store.record(make_row(field, clique, method));
    if (omega_format == "json") {
      json j = clique_to_json(clique);
      j["method"] = method;
      j["nodes"] = nodes;
      std::cout << j.dump() << '\n';
    } else {
      std::cout << clique.size() << (clique.exact ? " exact" : " not-exact")
                << '\n';
      json w = clique.vertices;
      std::cout << "witness " << w.dump() << '\n';
    }
    return 0;
  }

  if (cmd_bounds->parsed()) {
    std::vector<std::int64_t> qs;
    if (!sweep.empty() && bounds_q != 0) {
      std::cerr << "give either q or --sweep, not both\n";
      return 2;
    }
    if (!sweep.empty()) {
      for (std::int64_t q = sweep[0]; q <= sweep[1]; ++q) {
        if (q % 4 != 1 || q < 5) continue;
        try {
          factor_prime_power(q);
        } catch (const Error&) {
          continue;
        }
        qs.push_back(q);
      }
    } else if (bounds_q != 0) {
      qs.push_back(bounds_q);
    } else {
      std::cerr << "give q or --sweep qmin qmax\n";
      return 2;
    }
    bool first = true;
    json all = json::array();
    for (std::int64_t q : qs) {
      std::optional<OmegaInfo> omega;
      if (!no_omega) omega = omega_for_bounds(q, store_path);
      BoundReport report = bounds_table(q, omega);
      if (bounds_format == "csv") {
        std::cout << bound_report_csv(report, first);
      } else if (bounds_format == "json") {
        all.push_back(bound_report_to_json(report));
      } else {
        std::cout << bound_report_table(report);
      }
      first = false;
    }
    if (bounds_format == "json") {
      std::cout << (qs.size() == 1 ? all[0].dump() : all.dump()) << '\n';
    }
    return 0;
  }

  if (cmd_certify->parsed()) {
    Field field = field_for_q(certify_q);
    Clique clique;
    clique.q = certify_q;
    clique.vertices = parse_label_list(certify_clique);
    std::sort(clique.vertices.begin(), clique.vertices.end());
    StepanovCertificate cert = build_certificate(field, clique, certify_n);
    CertificateReport report = verify_certificate(cert);
    if (!certify_out.empty()) {
      std::ofstream out(certify_out);
      if (!out) raise("FileWriteError", "cannot write " + certify_out);
      out << certificate_to_json(cert).dump(2) << '\n';
    }
    for (const CertCheck& c : report.checks) {
      std::cout << (c.passed ? "ok   " : "FAIL ") << c.name
                << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
    }
    std::cout << "conclusion: (N-1)*n = " << cert.conclusion_lhs
              << " <= " << cert.conclusion_rhs << " = (q-1)/2" << '\n';
    return report.all_passed ? 0 : 1;
  }

  if (cmd_verify->parsed()) {
    std::ifstream in(verify_file);
    if (!in) {
      std::cerr << json{{"error", "FileNotFound"},
                        {"message", verify_file}}.dump()
                << '\n';
      return 1;
    }
    json j = json::parse(in);
    StepanovCertificate cert = certificate_from_json(j);
    CertificateReport report = verify_certificate(cert);
    std::cout << report_to_json(report).dump(2) << '\n';
    return report.all_passed ? 0 : 1;
  }

  if (cmd_scan->parsed()) {
    if (!scan_clique.empty() && greedy_seed >= 0) {
      std::cerr << "give either --clique or --greedy, not both\n";
      return 2;
    }
    Field field = field_for_q(scan_q);
    Clique clique;
    clique.q = scan_q;
    if (!scan_clique.empty()) {
      clique.vertices = parse_label_list(scan_clique);
      std::sort(clique.vertices.begin(), clique.vertices.end());
    } else {
      PaleyGraph graph = PaleyGraph::build(field);
      clique = greedy_clique(graph, greedy_seed < 0 ? 0 : greedy_seed);
    }
    ScanOptions options;
    options.strict_shape = strict;
    options.threads = scan_threads;
    ConjectureScanReport report = conjecture_scan(field, clique, scan_n, options);
    std::cout << scan_report_to_json(report).dump(2) << '\n';
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    if (e.name() == "Usage") {
      std::cerr << e.what() << '\n';
      return 2;
    }
    std::cerr << json{{"error", e.name()}, {"message", e.what()}}.dump()
              << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump()
              << '\n';
    return 1;
  }
}
