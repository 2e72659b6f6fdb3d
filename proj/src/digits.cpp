#include "paleytk/digits.hpp"

#include <algorithm>
#include <string>

#include "paleytk/intmath.hpp"

namespace paleytk {

namespace {

// binom(a, b) mod p for single base-p digits 0 <= a, b < p.
std::int64_t binom_digit(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::int64_t num = 1, den = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    num = static_cast<i128>(num) * ((a - b + i) % p) % p;
    den = static_cast<i128>(den) * (i % p) % p;
  }
  if (num == 0) return 0;
  return static_cast<i128>(num) * mod_inverse(den, p) % p;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) raise("NotPrime", std::to_string(p) + " is not prime");
}

}  // namespace

BasePDigits to_base_p(std::int64_t n, std::int64_t p) {
  if (p < 2) raise("BadBase", "base must be >= 2");
  if (n < 0) raise("BadBase", "value must be non-negative");
  BasePDigits d;
  d.base = p;
  if (n == 0) {
    d.digits = {0};
    return d;
  }
  while (n > 0) {
    d.digits.push_back(n % p);
    n /= p;
  }
  return d;
}

std::int64_t from_base_p(const BasePDigits& d) {
  if (d.base < 2) raise("BadBase", "base must be >= 2");
  i128 value = 0;
  i128 pw = 1;
  for (std::int64_t digit : d.digits) {
    if (digit < 0 || digit >= d.base) raise("BadBase", "digit out of range");
    value += pw * digit;
    pw *= d.base;
    if (value >= (i128{1} << 63)) raise("Overflow", "value does not fit");
  }
  return static_cast<std::int64_t>(value);
}

std::int64_t binom_mod_p(std::int64_t m, std::int64_t n, std::int64_t p) {
  require_prime(p);
  if (n < 0 || m < 0) return 0;
  if (n > m) return 0;
  std::int64_t result = 1;
  while (n > 0 || m > 0) {
    std::int64_t md = m % p, nd = n % p;
    if (nd > md) return 0;
    result = static_cast<i128>(result) * binom_digit(md, nd, p) % p;
    m /= p;
    n /= p;
  }
  return result;
}

bool hp_hypothesis_holds(std::int64_t n, std::int64_t q, std::int64_t p) {
  std::int64_t half = (q - 1) / 2;
  return binom_mod_p(n - 1 + half, half, p) != 0;
}

std::int64_t select_n_cubic(std::int64_t N, std::int64_t p) {
  require_prime(p);
  if (p % 4 != 1) raise("BadCongruence", "p must be 1 mod 4");
  std::int64_t Nm1 = N - 1;
  if (Nm1 < p || Nm1 >= p * p) {
    raise("OutOfWindow", "N-1 must have exactly 2 base-p digits");
  }
  std::int64_t A = Nm1 / p, B = Nm1 % p;
  if (A > (p - 1) / 2) {
    // The Lucas product picks up a carry at the top digit and vanishes, so
    // no n of this shape can satisfy the nonvanishing postcondition.
    raise("OutOfWindow", "top digit of N-1 exceeds (p-1)/2");
  }
  std::int64_t b = std::min((p - 1) / 2, B);
  return A * p + b + 1;
}

std::int64_t select_n_general(std::int64_t N, std::int64_t p, int s) {
  require_prime(p);
  if (p % 4 != 1 || p < 5) raise("BadCongruence", "p must be 1 mod 4 and >= 5");
  if (s < 2) raise("OutOfWindow", "s must be >= 2 (use the cubic rule at s=1)");
  BasePDigits d = to_base_p(N - 1, p);
  if (static_cast<int>(d.digits.size()) != s + 1) {
    raise("OutOfWindow", "N-1 must have exactly s+1 base-p digits");
  }
  const std::int64_t half = (p - 1) / 2;
  std::int64_t z_s = d.digits[s], z_sm1 = d.digits[s - 1];
  if (z_s > half) {
    raise("OutOfWindow", "top digit of N-1 exceeds (p-1)/2");
  }

  std::vector<std::int64_t> nd(d.digits);
  if (z_sm1 <= half) {
    // Largest value <= N-1 keeping digits s and s-1 and capping the rest at
    // (p-1)/2: walk down from the high digits, staying tight while we can.
    for (int j = s - 2; j >= 0; --j) {
      if (nd[j] <= half) continue;  // tight prefix so far
      nd[j] = half;
      for (int i = j - 1; i >= 0; --i) nd[i] = half;
      break;
    }
  } else {
    for (int j = s - 1; j >= 0; --j) nd[j] = half;
  }
  BasePDigits nb{p, nd};
  return from_base_p(nb) + 1;
}

std::vector<std::int64_t> compute_L(std::int64_t n, std::int64_t q,
                                    std::int64_t p) {
  std::int64_t T = n - 1 + (q - 1) / 2;
  std::vector<char> in_l(static_cast<std::size_t>(n), 0);
  for (std::int64_t k = 0; k <= n - 1; ++k) {
    if (binom_mod_p(T, k, p) == 0) continue;
    for (std::int64_t l = 0; l <= n - 1 - k; ++l) {
      if (!in_l[static_cast<std::size_t>(l)] &&
          binom_mod_p(n - 1 - k, l, p) != 0) {
        in_l[static_cast<std::size_t>(l)] = 1;
      }
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t l = 0; l < n; ++l) {
    if (in_l[static_cast<std::size_t>(l)]) out.push_back(l);
  }
  return out;
}

std::vector<std::int64_t> compute_M(std::int64_t n, std::int64_t q,
                                    std::int64_t p) {
  std::int64_t T = n - 1 + (q - 1) / 2;
  std::vector<std::int64_t> out;
  for (std::int64_t m = n; m <= (q - 1) / 2; ++m) {
    if (binom_mod_p(T, m, p) != 0) out.push_back(m);
  }
  return out;
}

}  // namespace paleytk
