#include "paleytk/intmath.hpp"

namespace paleytk {

namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % m);
}

}  // namespace

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) raise("DivisionByZero", "no inverse of 0 mod p");
  return mod_pow(a, p - 2, p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % d == 0) return n == d;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for n < 3.3e24, well past our 63-bit range.
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t checked_pow(std::int64_t p, int r) {
  i128 q = 1;
  for (int i = 0; i < r; ++i) {
    q *= p;
    if (q >= (i128{1} << 63)) {
      raise("Overflow", "p^r does not fit in 63 bits");
    }
  }
  return static_cast<std::int64_t>(q);
}

std::pair<std::int64_t, int> factor_prime_power(std::int64_t q) {
  if (q < 2) raise("BadForm", "not a prime power: " + std::to_string(q));
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::int64_t rest = q;
  int r = 0;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) {
    raise("BadForm", "not a prime power: " + std::to_string(q));
  }
  return {p, r};
}

}  // namespace paleytk
