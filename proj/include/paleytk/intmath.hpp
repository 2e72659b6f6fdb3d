#pragma once

#include <cstdint>
#include <utility>

#include "paleytk/common.hpp"

namespace paleytk {

/// Deterministic Miller-Rabin, valid for all n < 2^63.
bool is_prime(std::int64_t n);

/// p^r with an overflow guard; throws Error("Overflow") when p^r >= 2^63.
std::int64_t checked_pow(std::int64_t p, int r);

/// Writes q = p^r with p prime, r >= 1; throws Error("BadForm") otherwise.
std::pair<std::int64_t, int> factor_prime_power(std::int64_t q);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);  // p prime

}  // namespace paleytk
