#include <doctest.h>

#include <algorithm>

#include "paleytk/digits.hpp"
#include "paleytk/intmath.hpp"
#include "paleytk/serialize.hpp"
#include "paleytk/stepanov.hpp"
#include "support/oracles.hpp"

using namespace paleytk;

namespace {

Field field_for(std::int64_t q) {
  auto [p, r] = factor_prime_power(q);
  return Field::build(p, r);
}

Clique make_clique(std::int64_t q, std::vector<std::int64_t> vertices) {
  Clique c;
  c.q = q;
  c.vertices = std::move(vertices);
  std::sort(c.vertices.begin(), c.vertices.end());
  return c;
}

// certificate polynomial assembled by an independent route: generic
// polynomial powers instead of the binomial expansion
PolyFq expand_by_powers(const Field& f, const std::vector<FieldElem>& coeffs,
                        const std::vector<std::int64_t>& centers,
                        std::int64_t T, bool minus_one) {
  PolyFq acc(f);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    PolyFq base = PolyFq::x_minus(f, f.elem_of(centers[i]));
    PolyFq pw(f, {f.one()});
    for (std::int64_t e = 0; e < T; ++e) pw = pw * base;
    acc = acc + pw.scaled(coeffs[i]);
  }
  if (minus_one) acc = acc - PolyFq(f, {f.one()});
  return acc;
}

}  // namespace

TEST_CASE("worked certificate: q = 13, clique {0,1,4}, n = 3") {
  Field f13 = Field::build(13, 1);
  StepanovCertificate cert =
      build_certificate(f13, make_clique(13, {0, 1, 4}), 3);

  CHECK(f13.label_of(cert.coefficients[0]) == 10);
  CHECK(f13.label_of(cert.coefficients[1]) == 4);
  CHECK(f13.label_of(cert.coefficients[2]) == 12);

  REQUIRE(cert.f.has_value());
  CHECK(cert.f->degree() == 6);
  CHECK(f13.label_of(cert.f->leading()) == 2);  // binom(8,6) = 28 = 2 mod 13
  CHECK(*cert.f == expand_by_powers(f13, cert.coefficients, {0, 1, 4}, 8, true));

  CHECK(cert.multiplicities ==
        std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 2}, {1, 2}, {4, 2}});
  CHECK(cert.conclusion_lhs == 6);
  CHECK(cert.conclusion_rhs == 6);  // the bound is tight here

  CertificateReport report = verify_certificate(cert);
  CHECK(report.all_passed);
  CHECK(report.total_multiplicity == 6);
  CHECK(report.degree == 6);
}

TEST_CASE("worked certificate: q = 13, n = 2") {
  Field f13 = Field::build(13, 1);
  StepanovCertificate cert =
      build_certificate(f13, make_clique(13, {0, 1, 4}), 2);
  // 2x2 system: c1 + c2 = 0, -c2 = 1
  CHECK(f13.label_of(cert.coefficients[0]) == 1);
  CHECK(f13.label_of(cert.coefficients[1]) == 12);
  CHECK(cert.conclusion_lhs == 4);
  CHECK(cert.conclusion_rhs == 6);
  CHECK(verify_certificate(cert).all_passed);
}

TEST_CASE("certificate at q = 125 with the maximum clique") {
  Field f125 = field_for(125);
  PaleyGraph g = PaleyGraph::build(f125);
  Clique c = max_clique(g).clique;
  REQUIRE(c.size() == 7);
  StepanovCertificate cert = build_certificate(f125, c, 7);
  CHECK(cert.conclusion_lhs == 42);
  CHECK(cert.conclusion_rhs == 62);
  CHECK(cert.clique.vertices.front() == 0);  // normalized
  CertificateReport report = verify_certificate(cert);
  CHECK(report.all_passed);
  // every E^(k) f(a_j) with k <= n-2 vanishes on the materialized f too
  REQUIRE(cert.f.has_value());
  for (std::int64_t v : cert.clique.vertices) {
    for (std::int64_t k = 0; k <= 5; ++k) {
      CHECK(f125.is_zero(hyper_derivative(*cert.f, k).eval(f125.elem_of(v))));
    }
  }
}

TEST_CASE("hyper-derivative asymmetry between chosen and outside vertices") {
  // q = 125, n = 3 < N = 7: E^(k) f vanishes for k <= n-2 everywhere, and
  // E^(n-1) f additionally vanishes at the vertices outside the chosen n-set
  Field f125 = field_for(125);
  Clique c = max_clique(PaleyGraph::build(f125)).clique;
  REQUIRE(c.size() == 7);
  StepanovCertificate cert = build_certificate(f125, c, 3);
  REQUIRE(cert.f.has_value());
  PolyFq en1 = hyper_derivative(*cert.f, 2);
  for (std::size_t idx = 0; idx < cert.clique.vertices.size(); ++idx) {
    std::int64_t v = cert.clique.vertices[idx];
    for (std::int64_t k = 0; k <= 1; ++k) {
      CHECK(f125.is_zero(hyper_derivative(*cert.f, k).eval(f125.elem_of(v))));
    }
    bool vanishes = f125.is_zero(en1.eval(f125.elem_of(v)));
    if (idx >= 3) CHECK(vanishes);  // outside the chosen set: forced
  }
  CHECK(cert.conclusion_lhs == 18);  // (7-1)*3
  CHECK(verify_certificate(cert).all_passed);
}

TEST_CASE("certificate construction errors") {
  Field f125 = field_for(125);
  PaleyGraph g = PaleyGraph::build(f125);
  Clique c = max_clique(g).clique;

  CHECK_THROWS_AS(build_certificate(f125, c, 5), Error);  // binom(66,62) = 0
  try {
    build_certificate(f125, c, 5);
    FAIL("expected HypothesisFails");
  } catch (const Error& e) {
    CHECK(e.name() == "HypothesisFails");
  }
  CHECK_THROWS_AS(build_certificate(f125, c, 1), Error);
  CHECK_THROWS_AS(build_certificate(f125, c, 8), Error);
  CHECK_THROWS_AS(
      build_certificate(f125, make_clique(125, {0, 1, 2, 3}), 2), Error);
  try {
    build_certificate(f125, make_clique(125, {0, 1, 2, 3}), 2);
    FAIL("expected NotAClique");
  } catch (const Error& e) {
    CHECK(e.name() == "NotAClique");
  }
}

TEST_CASE("tampered certificates fail verification") {
  Field f13 = Field::build(13, 1);
  StepanovCertificate cert =
      build_certificate(f13, make_clique(13, {0, 1, 4}), 3);

  StepanovCertificate bumped = cert;
  bumped.coefficients[0] = f13.add(bumped.coefficients[0], f13.one());
  CertificateReport r1 = verify_certificate(bumped);
  CHECK_FALSE(r1.all_passed);
  bool system_failed = false;
  for (const CertCheck& c : r1.checks) {
    if (c.name == "system-F") system_failed = !c.passed;
  }
  CHECK(system_failed);

  StepanovCertificate wrong_vertices = cert;
  wrong_vertices.clique.vertices = {0, 1, 2};  // 2 is not in a clique with 1
  CertificateReport r2 = verify_certificate(wrong_vertices);
  CHECK_FALSE(r2.all_passed);
  CHECK_FALSE(r2.checks.front().passed);  // the clique check itself

  StepanovCertificate wrong_mult = cert;
  wrong_mult.multiplicities[0].second = 5;
  CHECK_FALSE(verify_certificate(wrong_mult).all_passed);
}

TEST_CASE("certificates normalize translated cliques") {
  Field f13 = Field::build(13, 1);
  // {0,1,4} shifted by 3
  StepanovCertificate cert =
      build_certificate(f13, make_clique(13, {3, 4, 7}), 3);
  CHECK(cert.clique.vertices.front() == 0);
  CHECK(verify_certificate(cert).all_passed);
  CHECK(cert.conclusion_lhs == 6);
}

TEST_CASE("t1 bound selection") {
  Field f13 = Field::build(13, 1);
  T1BoundResult r13 = t1_bound_for_clique(f13, make_clique(13, {0, 1, 4}));
  CHECK(r13.n == 3);
  CHECK(r13.bound == 3);
  CHECK(r13.method == "scan");

  Field f125 = field_for(125);
  Clique c125 = max_clique(PaleyGraph::build(f125)).clique;
  T1BoundResult r125 = t1_bound_for_clique(f125, c125);
  CHECK(r125.n == 7);
  CHECK(r125.bound == 9);
  CHECK(r125.method == "digit-construction");

  // even power: no digit construction applies, the scan still works
  Field f25 = field_for(25);
  Clique c25 = max_clique(PaleyGraph::build(f25)).clique;
  T1BoundResult r25 = t1_bound_for_clique(f25, c25);
  CHECK(r25.bound >= 5);
  CHECK(r25.method == "scan");

  // a singleton clique leaves no admissible n
  CHECK_THROWS_AS(t1_bound_for_clique(f13, make_clique(13, {5})), Error);
  try {
    t1_bound_for_clique(f13, make_clique(13, {5}));
    FAIL("expected NoAdmissibleN");
  } catch (const Error& e) {
    CHECK(e.name() == "NoAdmissibleN");
  }
}

TEST_CASE("t1 soundness on exact cliques at small scale") {
  for (std::int64_t q : {13, 17, 25, 29, 37, 41, 53, 81, 125, 169}) {
    Field f = field_for(q);
    Clique c = max_clique(PaleyGraph::build(f)).clique;
    T1BoundResult r = t1_bound_for_clique(f, c);
    CHECK(r.bound >= c.size());
    CHECK(verify_certificate(r.certificate).all_passed);
  }
}

TEST_CASE("A matrix: worked instance at q = 13") {
  Field f13 = Field::build(13, 1);
  Clique c = make_clique(13, {0, 1, 4});
  MatrixFq A = build_A_matrix(f13, c, 3, 6);
  REQUIRE(A.rows() == 4);  // |L(3)| = 3 rows plus the m-row
  REQUIRE(A.cols() == 3);
  auto label = [&](std::size_t r, std::size_t col) {
    return f13.label_of(A.at(r, col));
  };
  // rows are (-a_i)^l for l = 0,1,2,6 over nodes 0,-1,-4
  CHECK(label(0, 0) == 1);
  CHECK(label(0, 1) == 1);
  CHECK(label(0, 2) == 1);
  CHECK(label(1, 0) == 0);
  CHECK(label(1, 1) == 12);
  CHECK(label(1, 2) == 9);
  CHECK(label(2, 0) == 0);
  CHECK(label(2, 1) == 1);
  CHECK(label(2, 2) == 3);
  CHECK(label(3, 0) == 0);
  CHECK(label(3, 1) == 1);
  CHECK(label(3, 2) == 1);
  CHECK(rank(A.top_rows(3)) == 3);
  CHECK(rank(A) == 3);  // the m-row cannot leave the span of a full basis

  CHECK_THROWS_AS(build_A_matrix(f13, c, 3, 7), Error);  // m > (q-1)/2
  try {
    build_A_matrix(f13, c, 3, 7);
    FAIL("expected PreconditionM");
  } catch (const Error& e) {
    CHECK(e.name() == "PreconditionM");
  }
}

TEST_CASE("variant system at q = 13 is rank-blocked") {
  Field f13 = Field::build(13, 1);
  Clique c = make_clique(13, {0, 1, 4});
  VariantReport report = build_variant_system(f13, c, {0, 1, 4}, 3, 6);
  CHECK(report.L == std::vector<std::int64_t>{0, 1, 2});
  CHECK(report.zero_in_L);
  // L(3) already has full column rank, so only c = 0 satisfies the L-rows
  // and the m-row equation 0 = 1 cannot follow
  CHECK_FALSE(report.solvable);
  CHECK_FALSE(report.conclusion_lhs.has_value());
}

TEST_CASE("variant preconditions") {
  Field f125 = field_for(125);
  Clique c = max_clique(PaleyGraph::build(f125)).clique;
  // binom(64, 15) has digit pattern (0,3,0) vs (2,2,4): it vanishes mod 5
  CHECK(binom_mod_p(64, 15, 5) == 0);
  CHECK_THROWS_AS(
      build_variant_system(f125, c, {c.vertices[0], c.vertices[1],
                                     c.vertices[2]}, 3, 15), Error);
  // D not inside the clique
  Field f13 = Field::build(13, 1);
  Clique c13 = make_clique(13, {0, 1, 4});
  CHECK_THROWS_AS(build_variant_system(f13, c13, {0, 1, 5}, 3, 6), Error);
  try {
    build_variant_system(f13, c13, {0, 1, 5}, 3, 6);
    FAIL("expected BadSubset");
  } catch (const Error& e) {
    CHECK(e.name() == "BadSubset");
  }
  // degenerate n
  CHECK_THROWS_AS(build_variant_system(f13, c13, {0}, 1, 6), Error);
}

TEST_CASE("conjecture scan at q = 13") {
  Field f13 = Field::build(13, 1);
  ConjectureScanReport report =
      conjecture_scan(f13, make_clique(13, {0, 1, 4}), 3);
  CHECK(report.L == std::vector<std::int64_t>{0, 1, 2});
  CHECK(report.M_size == 4);  // m = 3,4,5,6
  CHECK(report.verdicts.size() == 4);
  for (const ScanVerdict& v : report.verdicts) {
    CHECK_FALSE(v.independent);
  }
  CHECK_FALSE(report.exists_independent);
  CHECK(report.zero_in_L);
  CHECK_FALSE(report.variant.has_value());
}

TEST_CASE("conjecture scan with an empty M") {
  // n = 7 at q = 13 leaves no m in [n, (q-1)/2]
  Field f13 = Field::build(13, 1);
  ConjectureScanReport report =
      conjecture_scan(f13, make_clique(13, {0, 1, 4}), 7);
  CHECK(report.M_size == 0);
  CHECK(report.verdicts.empty());
  CHECK_FALSE(report.exists_independent);
  CHECK_FALSE(report.variant.has_value());
}

TEST_CASE("conjecture scan at q = 5^5: free n exercises the variant") {
  Field f = field_for(3125);
  PaleyGraph g = PaleyGraph::build(f);
  Clique c = greedy_clique(g, 0);
  REQUIRE(c.size() >= 9);

  ConjectureScanReport report = conjecture_scan(f, c, 9);
  CHECK(report.L == std::vector<std::int64_t>{0, 1, 2, 3, 5, 6, 7, 8});
  CHECK(report.M_size == 131);
  CHECK(report.exists_independent);
  CHECK_FALSE(report.shape_matches);
  REQUIRE(report.variant.has_value());
  CHECK(report.variant->solvable);
  CHECK(report.variant->multiplicities_verified);
  CHECK(report.variant->conclusion_lhs == 9 * (c.size() - 2));
  CHECK(report.variant->conclusion_rhs == (3125 - 3) / 2);
  CHECK_FALSE(report.conditional_note.empty());

  // deterministic under threads: verdicts merge by m either way
  ScanOptions threaded;
  threaded.threads = 4;
  ConjectureScanReport parallel = conjecture_scan(f, c, 9, threaded);
  REQUIRE(parallel.verdicts.size() == report.verdicts.size());
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    CHECK(parallel.verdicts[i].m == report.verdicts[i].m);
    CHECK(parallel.verdicts[i].independent == report.verdicts[i].independent);
  }
}

TEST_CASE("conjecture scan at q = 5^5: strict prescribed shape") {
  Field f = field_for(3125);
  PaleyGraph g = PaleyGraph::build(f);
  Clique c = greedy_clique(g, 0);

  ScanOptions strict;
  strict.strict_shape = true;
  // n - 1 = (1,4,3)_5 = 48
  ConjectureScanReport report = conjecture_scan(f, c, 49, strict);
  CHECK(report.shape_matches);
  CHECK(report.digit_lemma_ok);
  CHECK(report.L.size() == 40);
  CHECK(report.L.size() < 49);
  CHECK(report.M_size == 123);
  CHECK(report.zero_in_L);

  CHECK_THROWS_AS(conjecture_scan(f, c, 9, strict), Error);
  try {
    conjecture_scan(f, c, 9, strict);
    FAIL("expected BadShape");
  } catch (const Error& e) {
    CHECK(e.name() == "BadShape");
  }

  // scans are only defined over odd powers
  CHECK_THROWS_AS(conjecture_scan(field_for(25), make_clique(25, {0, 1}), 2),
                  Error);
}

TEST_CASE("above the materialization cap, closed-form checks carry the load") {
  // q = 13^5 = 371293: f would have degree 185646, so it is never stored and
  // every check runs on the shifted-power evaluations instead
  Field f = Field::build(13, 5);
  std::vector<std::int64_t> vertices{0};
  for (std::int64_t v = 1; v < f.q() && vertices.size() < 10; ++v) {
    bool ok = true;
    for (std::int64_t u : vertices) {
      if (!f.is_quadratic_residue(f.elem_of(f.sub_labels(v, u)))) {
        ok = false;
        break;
      }
    }
    if (ok) vertices.push_back(v);
  }
  REQUIRE(vertices.size() == 10);
  Clique c{f.q(), vertices, false};

  T1BoundResult r = t1_bound_for_clique(f, c);
  CHECK_FALSE(r.certificate.f.has_value());
  // (q-1)/2 = (6,6,6,6,6)_13, so digit 0 of n-1+(q-1)/2 carries past n = 7
  CHECK(r.n == 7);
  CHECK(r.bound == (f.q() - 1) / 2 / 7 + 1);
  CHECK(r.bound >= c.size());
  for (auto [v, mult] : r.certificate.multiplicities) {
    CHECK(mult >= 6);
  }
  CHECK(verify_certificate(r.certificate).all_passed);

  StepanovCertificate bumped = r.certificate;
  bumped.coefficients[2] = f.add(bumped.coefficients[2], f.one());
  CHECK_FALSE(verify_certificate(bumped).all_passed);
}

TEST_CASE("certificate JSON round-trip") {
  Field f13 = Field::build(13, 1);
  StepanovCertificate cert =
      build_certificate(f13, make_clique(13, {0, 1, 4}), 3);
  nlohmann::json j = certificate_to_json(cert);
  StepanovCertificate loaded = certificate_from_json(j);
  CHECK(verify_certificate(loaded).all_passed);
  CHECK(certificate_to_json(loaded) == j);  // byte-identical re-encoding
  CHECK(loaded.coefficients == cert.coefficients);
  CHECK(loaded.clique.vertices == cert.clique.vertices);

  // a corrupted file is caught by verification, not by a crash
  nlohmann::json bad = j;
  bad["coefficients"][0] = 11;
  CHECK_FALSE(verify_certificate(certificate_from_json(bad)).all_passed);
}
