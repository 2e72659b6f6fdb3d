#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paleytk/paley.hpp"
#include "paleytk/polyfq.hpp"

namespace paleytk {

/// Polynomial certificate for the inequality (N-1)n <= (q-1)/2.
///
/// f(x) = sum c_i (x - a_i)^{n-1+(q-1)/2} - 1 where c solves the moment
/// system: sum c_i (-a_i)^j = 0 for j <= n-2 and = 1 at j = n-1. The clique
/// is stored translated so its first vertex is 0. f is materialized only up
/// to q <= 10^5 (degree (q-1)/2 is dense); beyond that every check runs on
/// the closed-form hyper-derivative evaluations instead.
struct StepanovCertificate {
  std::int64_t p = 0;
  int r = 0;
  std::int64_t q = 0;
  Clique clique;                        // normalized, vertices[0] == 0
  std::int64_t n = 0;
  std::vector<FieldElem> coefficients;  // c_1..c_n
  std::optional<PolyFq> f;
  std::int64_t claimed_degree = 0;  // (q-1)/2
  /// vertex label -> verified root multiplicity of f, ascending by label
  std::vector<std::pair<std::int64_t, std::int64_t>> multiplicities;
  std::int64_t conclusion_lhs = 0;  // (N-1)*n
  std::int64_t conclusion_rhs = 0;  // (q-1)/2
};

inline constexpr std::int64_t kMaterializeCap = 100'000;

/// Errors: NotAClique, NOutOfRange, HypothesisFails.
StepanovCertificate build_certificate(const Field& field, const Clique& clique,
                                      std::int64_t n);

struct CertCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificateReport {
  std::vector<CertCheck> checks;
  bool all_passed = false;
  std::int64_t total_multiplicity = 0;  // sum of the required thresholds
  std::int64_t degree = 0;
};

/// Re-derives every certificate invariant from scratch; construction plays
/// no part. Failures land in the report, never in an exception.
CertificateReport verify_certificate(const StepanovCertificate& cert);

struct T1BoundResult {
  std::int64_t bound = 0;  // implied upper bound on omega(P_q)
  std::int64_t n = 0;
  std::string method;  // "digit-construction" or "scan"
  StepanovCertificate certificate;
};

/// Picks n by the digit constructions when they apply (odd prime powers with
/// N-1 in the window), otherwise scans n <= N for the largest n with the
/// nonvanishing hypothesis, builds the certificate and converts
/// (N'-1)n <= (q-1)/2 into a bound on N'. Error("NoAdmissibleN") when no
/// n >= 2 qualifies.
T1BoundResult t1_bound_for_clique(const Field& field, const Clique& clique);

/// Moment matrix A_{m,n} = ((-a_i)^l), rows l in sorted L(n) then m,
/// columns the clique vertices. Error("PreconditionM") unless
/// n <= m <= (q-1)/2 and binom(n-1+(q-1)/2, m) != 0 mod p.
MatrixFq build_A_matrix(const Field& field, const Clique& clique,
                        std::int64_t n, std::int64_t m);

struct VariantReport {
  std::int64_t q = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> D;  // the chosen n-subset
  std::vector<std::int64_t> L;
  bool zero_in_L = false;
  bool solvable = false;
  std::vector<FieldElem> coefficients;   // when solvable
  bool multiplicities_verified = false;  // hyper-derivative ledger re-checked
  std::int64_t f_degree = -1;            // exact degree when materialized
  // n(N-2) <= (q-3)/2, recorded only when the system solves and the
  // multiplicity ledger verifies
  std::optional<std::int64_t> conclusion_lhs;
  std::optional<std::int64_t> conclusion_rhs;
};

/// Assembles and attempts the (|L(n)|+1) x n system: sum c_i (-d_i)^l = 0
/// for l in L(n) and sum c_i (-d_i)^m = 1. When it solves, the multiplicity
/// ledger of f = sum c_i (x-d_i)^{n-1+(q-1)/2} is verified and the implied
/// n(N-2) <= (q-3)/2 recorded. Errors: NOutOfRange, BadSubset, PreconditionM,
/// NotAClique.
VariantReport build_variant_system(const Field& field, const Clique& clique,
                                   const std::vector<std::int64_t>& D,
                                   std::int64_t n, std::int64_t m);

struct ScanVerdict {
  std::int64_t m = 0;
  bool independent = false;  // m-row independent of the L(n)-rows of A_{m,n}
};

struct ScanOptions {
  /// Require n-1 = (z_s, z_{s-1}, (p-1)/2, ..., (p-1)/2, (p+1)/2)_p with
  /// z_{s-1} > (p+1)/2; rejects other n with Error("BadShape").
  bool strict_shape = false;
  int threads = 1;
};

struct ConjectureScanReport {
  std::int64_t q = 0, p = 0;
  int s = 0;
  std::int64_t n = 0;
  std::int64_t clique_size = 0;
  std::vector<std::int64_t> L;
  bool zero_in_L = false;
  std::int64_t M_size = 0;
  std::vector<ScanVerdict> verdicts;  // ascending m
  bool exists_independent = false;
  /// Every l in L(n) obeys l_0 <= (p+1)/2 and l_j <= (p-1)/2 for 1<=j<=s-2.
  bool digit_lemma_ok = false;
  std::vector<std::int64_t> digit_lemma_violations;
  bool shape_matches = false;  // n has the prescribed digit shape
  std::optional<VariantReport> variant;  // attempted for the first good m
  /// Display-only note naming the conditional constant (12+sqrt(2))/8 once
  /// an independent m produced a solving system.
  std::string conditional_note;
};

/// For every m in M: build A_{m,n} and test whether the m-row lies in the
/// span of the L(n)-rows. When an independent m exists and n <= N, a subset
/// D extending a pivot column basis is tried through the variant system.
ConjectureScanReport conjecture_scan(const Field& field, const Clique& clique,
                                     std::int64_t n,
                                     const ScanOptions& options = {});

}  // namespace paleytk
