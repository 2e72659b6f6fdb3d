#pragma once

#include <cstdint>
#include <vector>

#include "paleytk/common.hpp"

namespace paleytk {

/// Base-p digit vector, little-endian, no trailing zero beyond position 0.
struct BasePDigits {
  std::int64_t base = 0;
  std::vector<std::int64_t> digits;

  bool operator==(const BasePDigits&) const = default;
};

BasePDigits to_base_p(std::int64_t n, std::int64_t p);  // Error("BadBase")
std::int64_t from_base_p(const BasePDigits& d);

/// binom(m, n) mod p by Lucas's theorem: the product of digitwise binomials.
/// Zero exactly when some digit of n exceeds the matching digit of m.
std::int64_t binom_mod_p(std::int64_t m, std::int64_t n, std::int64_t p);

/// binom(n-1+(q-1)/2, (q-1)/2) != 0 mod p, the nonvanishing condition the
/// degree argument of the certificate construction rests on.
bool hp_hypothesis_holds(std::int64_t n, std::int64_t q, std::int64_t p);

/// Digit construction of n for q = p^3 from N-1 = (A,B)_p: n-1 = (A,b)_p with
/// b = min((p-1)/2, B). Requires N-1 to have exactly two base-p digits and
/// A <= (p-1)/2; outside that window the nonvanishing postcondition is not
/// achievable and Error("OutOfWindow") is thrown.
std::int64_t select_n_cubic(std::int64_t N, std::int64_t p);

/// Digit construction of n for q = p^{2s+1}, s >= 2, from the s+1 digits
/// (z_s,...,z_0)_p of N-1. Case z_{s-1} <= (p-1)/2 takes the largest value
/// <= N-1 with the same top two digits and all lower digits <= (p-1)/2;
/// otherwise the lower s digits are all forced to (p-1)/2. Guarantees
/// n <= N <= n + (p^s-1)/2 and the nonvanishing postcondition.
std::int64_t select_n_general(std::int64_t N, std::int64_t p, int s);

/// L(n): all l in [0, n-1] such that some k in [0, n-1] has
/// binom(n-1+(q-1)/2, k) * binom(n-1-k, l) != 0 mod p. Sorted.
std::vector<std::int64_t> compute_L(std::int64_t n, std::int64_t q,
                                    std::int64_t p);

/// M: all m in [n, (q-1)/2] with binom(n-1+(q-1)/2, m) != 0 mod p. Sorted.
std::vector<std::int64_t> compute_M(std::int64_t n, std::int64_t q,
                                    std::int64_t p);

}  // namespace paleytk
