#include "paleytk/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "paleytk/intmath.hpp"

namespace paleytk {

std::uint64_t isqrt_u128(u128 n) {
  if (n == 0) return 0;
  // Newton iteration from a power-of-two overestimate.
  u128 x = n;
  int bits = 0;
  while (x > 0) {
    x >>= 1;
    ++bits;
  }
  u128 r = u128{1} << ((bits + 1) / 2);
  for (;;) {
    u128 next = (r + n / r) >> 1;
    if (next >= r) break;
    r = next;
  }
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint64_t>(r);
}

std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) raise("BadForm", "isqrt of a negative number");
  return static_cast<std::int64_t>(isqrt_u128(static_cast<u128>(n)));
}

namespace {

void require_congruent(std::int64_t q) {
  if (q < 5 || q % 4 != 1) {
    raise("BadCongruence", "q = 1 mod 4 required, got " + std::to_string(q));
  }
}

// Largest N >= 1 with (N-1)(N-K) <= bound; the left side is nonpositive up
// to N = K and increasing beyond, so the satisfying set is an interval.
std::int64_t largest_quadratic(std::int64_t K, std::int64_t bound) {
  std::int64_t lo = 1, hi = 2 + K + isqrt64(bound < 0 ? 0 : bound);
  auto ok = [&](std::int64_t N) {
    return static_cast<i128>(N - 1) * (N - K) <= bound;
  };
  while (ok(hi)) hi *= 2;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

std::int64_t trivial_bound(std::int64_t q) {
  require_congruent(q);
  return (q + 1) / 2;
}

std::int64_t sqrt_bound(std::int64_t q) {
  require_congruent(q);
  return isqrt64(q);
}

std::int64_t hp_bound(std::int64_t p) {
  if (!is_prime(p)) raise("NotPrime", std::to_string(p) + " is not prime");
  if (p % 4 != 1) raise("BadCongruence", "p = 1 mod 4 required");
  // largest N with 2N(N-1) <= p-1
  std::int64_t N = (isqrt64(2 * p - 1) + 1) / 2;
  while (2 * N * (N - 1) > p - 1) --N;
  while (2 * (N + 1) * N <= p - 1) ++N;
  return N;
}

std::int64_t ceil_sqrt_half(std::int64_t p) {
  if (p < 1) raise("BadForm", "p must be positive");
  std::int64_t c = isqrt64((p + 1) / 2);
  while (2 * c * c < p) ++c;
  while (c > 1 && 2 * (c - 1) * (c - 1) >= p) --c;
  return c;
}

std::int64_t brm_bound(std::int64_t q) {
  require_congruent(q);
  auto [p, r] = factor_prime_power(q);
  if (r % 2 == 0) raise("BadForm", "odd prime power required");
  std::int64_t s = isqrt64(q);
  std::int64_t c = (s % 2 == 0) ? -1 : -2;  // omega^2 + k*omega + c <= q
  std::int64_t k = (s % 2 == 0) ? 1 : 2;
  std::int64_t w = isqrt64(q);
  auto ok = [&](std::int64_t omega) {
    return static_cast<i128>(omega) * omega + static_cast<i128>(k) * omega + c <=
           q;
  };
  while (!ok(w)) --w;
  while (ok(w + 1)) ++w;
  return w;
}

std::int64_t main_bound(std::int64_t p, int s) {
  if (!is_prime(p)) raise("NotPrime", std::to_string(p) + " is not prime");
  if (p % 4 != 1) raise("BadCongruence", "p = 1 mod 4 required");
  if (s < 0) raise("BadForm", "s must be >= 0");
  checked_pow(p, 2 * s + 1);  // overflow guard on q

  std::int64_t branch1 = checked_pow(p, s) * ceil_sqrt_half(p);
  std::int64_t branch2;
  if (s == 0) {
    branch2 = hp_bound(p);
  } else {
    std::int64_t q = checked_pow(p, 2 * s + 1);
    std::int64_t K = s == 1 ? (p - 1) / 2 : (checked_pow(p, s) - 1) / 2;
    branch2 = largest_quadratic(K, (q - 1) / 2);
  }
  return std::min(branch1, branch2);
}

namespace {

// Outward-rounded display of sqrt(q/2) + (p^s+1)/4 + sqrt(2p)/32 * p^{s-1},
// in 1/2^32 steps. Never used in an asserted bound.
std::string closed_form_display(std::int64_t p, int s, std::int64_t q) {
  u128 scale = u128{1} << 32;
  // ceil(2^32 * sqrt(q/2)) via isqrt(q * 2^63)
  u128 arg = static_cast<u128>(q) << 63;
  u128 x = isqrt_u128(arg);
  if (x * x < arg) ++x;
  u128 total = x;
  // (p^s + 1) / 4 scaled exactly
  u128 ps = 1;
  for (int i = 0; i < s; ++i) ps *= static_cast<u128>(p);
  total += (ps + 1) * (scale / 4);
  // ceil(2^32 * sqrt(2p)) * p^{s-1} / 32, rounded up
  u128 arg2 = static_cast<u128>(2 * p) << 64;
  u128 y = isqrt_u128(arg2);
  if (y * y < arg2) ++y;
  if (s >= 1) {
    u128 ps1 = 1;
    for (int i = 0; i + 1 < s; ++i) ps1 *= static_cast<u128>(p);
    total += (y * ps1 + 31) / 32;
  } else {
    total += (y + static_cast<u128>(32 * p) - 1) / (static_cast<u128>(32) * p);
  }
  u128 integral = total >> 32;
  u128 frac = ((total & (scale - 1)) * 10000 + scale - 1) >> 32;
  std::ostringstream os;
  os << static_cast<std::uint64_t>(integral) << '.';
  std::string f = std::to_string(static_cast<std::uint64_t>(frac));
  os << std::string(4 - std::min<std::size_t>(4, f.size()), '0') << f;
  os << " (display only)";
  return os.str();
}

}  // namespace

std::optional<std::int64_t> BoundReport::value_of(const std::string& name) const {
  for (const BoundEntry& e : entries) {
    if (e.name == name) return e.value;
  }
  return std::nullopt;
}

BoundReport bounds_table(std::int64_t q, std::optional<OmegaInfo> omega) {
  require_congruent(q);
  auto [p, r] = factor_prime_power(q);

  BoundReport report;
  report.q = q;
  report.p = p;
  report.r = r;
  report.omega = std::move(omega);

  report.entries.push_back(
      {"trivial", trivial_bound(q), "omega <= (q+1)/2"});
  report.entries.push_back({"sqrt", sqrt_bound(q), "omega^2 <= q"});
  if (r == 1) {
    report.entries.push_back({"hp", hp_bound(p), "2*omega*(omega-1) <= p-1"});
  }
  if (r % 2 == 1) {
    std::string ineq = isqrt64(q) % 2 == 0 ? "omega^2+omega-1 <= q"
                                           : "omega^2+2*omega-2 <= q";
    report.entries.push_back({"brm", brm_bound(q), ineq});
    int s = (r - 1) / 2;
    std::int64_t b1 = checked_pow(p, s) * ceil_sqrt_half(p);
    std::int64_t main = main_bound(p, s);
    std::ostringstream ineq2;
    if (s == 0) {
      ineq2 << "min(ceil(sqrt(p/2)) = " << b1 << ", hp)";
    } else {
      std::int64_t K = s == 1 ? (p - 1) / 2 : (checked_pow(p, s) - 1) / 2;
      ineq2 << "min(p^s*ceil(sqrt(p/2)) = " << b1 << ", largest N: (N-1)(N-"
            << K << ") <= (q-1)/2)";
    }
    report.entries.push_back({"main", main, ineq2.str()});
    report.main_closed_form_display = closed_form_display(p, s, q);
  }
  return report;
}

namespace {

std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string bound_report_csv(const BoundReport& report, bool header) {
  std::ostringstream os;
  if (header) os << "q,p,r,bound_name,value,inequality,omega_exact\n";
  std::string omega_col;
  if (report.omega && report.omega->exact) {
    omega_col = std::to_string(report.omega->value);
  }
  for (const BoundEntry& e : report.entries) {
    os << report.q << ',' << report.p << ',' << report.r << ',' << e.name
       << ',' << e.value << ',' << csv_escape(e.inequality) << ','
       << omega_col << '\n';
  }
  if (report.omega) {
    os << report.q << ',' << report.p << ',' << report.r << ",omega,"
       << report.omega->value << ','
       << csv_escape(report.omega->exact ? "exact search"
                                         : "best witness (not exact)")
       << ',' << omega_col << '\n';
  }
  return os.str();
}

std::string bound_report_table(const BoundReport& report) {
  std::ostringstream os;
  os << "q = " << report.q << " = " << report.p << '^' << report.r << '\n';
  for (const BoundEntry& e : report.entries) {
    os << "  " << e.name;
    for (std::size_t i = e.name.size(); i < 8; ++i) os << ' ';
    os << e.value << "   [" << e.inequality << "]\n";
  }
  if (!report.main_closed_form_display.empty()) {
    os << "  closed-form main expression <= " << report.main_closed_form_display
       << '\n';
  }
  if (report.omega) {
    os << "  omega   " << report.omega->value
       << (report.omega->exact ? "   [exact, " : "   [not exact, ")
       << report.omega->provenance << "]\n";
  }
  return os.str();
}

}  // namespace paleytk
