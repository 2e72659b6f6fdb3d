#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paleytk/common.hpp"

namespace paleytk {

/// Exact floor of sqrt(n).
std::uint64_t isqrt_u128(u128 n);
std::int64_t isqrt64(std::int64_t n);

// Every bound below is the largest integer satisfying the exact integer
// inequality its proof establishes; no floating point is involved.

/// omega <= (q+1)/2.
std::int64_t trivial_bound(std::int64_t q);  // Error("BadCongruence")

/// omega <= sqrt(q); attained at even powers via the subfield.
std::int64_t sqrt_bound(std::int64_t q);  // Error("BadCongruence")

/// Largest N with 2N(N-1) <= p-1, the prime-field Stepanov bound.
std::int64_t hp_bound(std::int64_t p);  // Error("NotPrime"/"BadCongruence")

/// Smallest c with 2c^2 >= p, i.e. ceil(sqrt(p/2)).
std::int64_t ceil_sqrt_half(std::int64_t p);

/// Parity of isqrt(q) selects omega^2+omega-1 <= q or omega^2+2omega-2 <= q;
/// returns the largest satisfying omega. Odd prime powers only.
std::int64_t brm_bound(std::int64_t q);  // Error("BadForm"/"BadCongruence")

/// min(p^s * ceil_sqrt_half(p), largest N with (N-1)(N-K) <= (q-1)/2) for
/// q = p^{2s+1}, where K = (p-1)/2 at s = 1 and (p^s-1)/2 at s >= 2; at
/// s = 0 the second branch is the hp inequality.
std::int64_t main_bound(std::int64_t p, int s);

struct BoundEntry {
  std::string name;  // trivial | sqrt | hp | brm | main
  std::int64_t value = 0;
  std::string inequality;
};

struct OmegaInfo {
  std::int64_t value = 0;
  bool exact = false;
  std::string provenance;
};

struct BoundReport {
  std::int64_t q = 0, p = 0;
  int r = 0;
  std::vector<BoundEntry> entries;
  std::optional<OmegaInfo> omega;
  /// Outward-rounded evaluation of the closed form
  /// sqrt(q/2) + (p^s+1)/4 + sqrt(2p)/32 * p^{s-1}, display only: it never
  /// feeds an asserted bound.
  std::string main_closed_form_display;

  std::optional<std::int64_t> value_of(const std::string& name) const;
};

/// All bounds applicable to q (trivial and sqrt always; hp for primes; brm
/// and main for odd prime powers). Error("BadCongruence") unless q = 1 mod 4.
BoundReport bounds_table(std::int64_t q,
                         std::optional<OmegaInfo> omega = std::nullopt);

/// CSV rows: q,p,r,bound_name,value,inequality,omega_exact (with header when
/// requested); omega appears as its own row when known.
std::string bound_report_csv(const BoundReport& report, bool header = true);

std::string bound_report_table(const BoundReport& report);

}  // namespace paleytk
