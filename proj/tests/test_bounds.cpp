#include <doctest.h>

#include <map>
#include <cmath>
#include <random>
#include <sstream>

#include "paleytk/bounds.hpp"
#include "paleytk/intmath.hpp"

using namespace paleytk;

TEST_CASE("isqrt") {
  CHECK(isqrt64(0) == 0);
  CHECK(isqrt64(124) == 11);
  CHECK(isqrt64(125) == 11);
  CHECK(isqrt64(144) == 12);
  CHECK(isqrt_u128((u128{1} << 100)) == (std::uint64_t{1} << 50));

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 5000; ++trial) {
    u128 n = (static_cast<u128>(rng()) << 40) ^ rng();
    u128 r = isqrt_u128(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("trivial and sqrt bounds") {
  CHECK(trivial_bound(13) == 7);
  CHECK(trivial_bound(5) == 3);
  CHECK(trivial_bound(125) == 63);
  CHECK(sqrt_bound(25) == 5);
  CHECK(sqrt_bound(125) == 11);
  CHECK(sqrt_bound(13) == 3);
  CHECK_THROWS_AS(trivial_bound(7), Error);
  try {
    sqrt_bound(7);
    FAIL("expected BadCongruence");
  } catch (const Error& e) {
    CHECK(e.name() == "BadCongruence");
  }
}

TEST_CASE("hp bound") {
  CHECK(hp_bound(13) == 3);
  CHECK(hp_bound(5) == 2);
  CHECK(hp_bound(17) == 3);
  CHECK_THROWS_AS(hp_bound(15), Error);
  CHECK_THROWS_AS(hp_bound(7), Error);
}

TEST_CASE("ceil_sqrt_half") {
  CHECK(ceil_sqrt_half(13) == 3);
  CHECK(ceil_sqrt_half(5) == 2);
  CHECK(ceil_sqrt_half(2) == 1);
  CHECK(ceil_sqrt_half(8) == 2);
  CHECK(ceil_sqrt_half(9) == 3);  // 2*2^2 = 8 < 9
}

TEST_CASE("brm bound") {
  CHECK(brm_bound(13) == 3);
  CHECK(brm_bound(125) == 10);
  CHECK(brm_bound(3125) == 54);
  CHECK_THROWS_AS(brm_bound(25), Error);  // even power
  try {
    brm_bound(25);
    FAIL("expected BadForm");
  } catch (const Error& e) {
    CHECK(e.name() == "BadForm");
  }
}

TEST_CASE("main bound") {
  CHECK(main_bound(5, 1) == 9);    // min(10, 9)
  CHECK(main_bound(5, 2) == 46);   // min(50, 46)
  CHECK(main_bound(13, 0) == 3);   // reduces to hp
  CHECK(main_bound(13, 1) == 36);  // min(39, 36) at q = 2197
}

TEST_CASE("hp floor-consistency against the closed form") {
  std::mt19937_64 rng(73);
  int done = 0;
  while (done < 10000) {
    std::int64_t p = 5 + static_cast<std::int64_t>(rng() % 1'000'000'000);
    if (!is_prime(p) || p % 4 != 1) continue;
    ++done;
    // floor((sqrt(2p-1)+1)/2) with the 128-bit isqrt
    std::int64_t closed =
        (static_cast<std::int64_t>(isqrt_u128(static_cast<u128>(2 * p - 1))) +
         1) /
        2;
    CHECK(hp_bound(p) == closed);
  }
}

TEST_CASE("hp vs ceil_sqrt_half over a sieve") {
  std::vector<bool> composite(1'000'001, false);
  for (std::int64_t i = 2; i * i <= 1'000'000; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i * i; j <= 1'000'000; j += i) {
      composite[static_cast<std::size_t>(j)] = true;
    }
  }
  for (std::int64_t p = 5; p <= 1'000'000; p += 4) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    CHECK(hp_bound(p) <= ceil_sqrt_half(p));
  }
}

TEST_CASE("s = 0 reduction of the main bound") {
  for (std::int64_t p : {5, 13, 17, 29, 101, 1009}) {
    if (p % 4 != 1) continue;
    CHECK(main_bound(p, 0) == hp_bound(p));
  }
}

TEST_CASE("bounds tables: frozen instances") {
  BoundReport r125 = bounds_table(125);
  std::map<std::string, std::int64_t> got;
  for (const BoundEntry& e : r125.entries) got[e.name] = e.value;
  std::map<std::string, std::int64_t> want{
      {"trivial", 63}, {"sqrt", 11}, {"brm", 10}, {"main", 9}};
  CHECK(got == want);

  BoundReport r13 = bounds_table(13);
  got.clear();
  for (const BoundEntry& e : r13.entries) got[e.name] = e.value;
  want = {{"trivial", 7}, {"sqrt", 3}, {"hp", 3}, {"brm", 3}, {"main", 3}};
  CHECK(got == want);

  BoundReport r25 = bounds_table(25);
  got.clear();
  for (const BoundEntry& e : r25.entries) got[e.name] = e.value;
  want = {{"trivial", 13}, {"sqrt", 5}};
  CHECK(got == want);

  CHECK(r125.value_of("main") == 9);
  CHECK_FALSE(r25.value_of("hp").has_value());
  CHECK_THROWS_AS(bounds_table(21), Error);  // 21 = 1 mod 4 but not a prime power
  CHECK_THROWS_AS(bounds_table(27), Error);  // 27 = 3 mod 4
}

TEST_CASE("closed-form display value upper-bounds the real expression") {
  // display only, but it must never round inward
  for (auto [p, s] : {std::pair<std::int64_t, int>{5, 1}, {5, 2}, {13, 1},
                      {13, 2}, {17, 1}}) {
    std::int64_t q = checked_pow(p, 2 * s + 1);
    BoundReport report = bounds_table(q);
    std::string display = report.main_closed_form_display;
    double shown = std::stod(display.substr(0, display.find(' ')));
    double real = std::sqrt(q / 2.0) + (std::pow(p, s) + 1) / 4.0 +
                  std::sqrt(2.0 * p) / 32.0 * std::pow(p, s - 1);
    CHECK(shown >= real - 1e-9);
    CHECK(shown <= real + 2e-4);  // rounded outward by at most 2/10^4
  }
}

TEST_CASE("CSV and table rendering") {
  BoundReport report = bounds_table(13, OmegaInfo{3, true, "search"});
  std::string csv = bound_report_csv(report);
  CHECK(csv.find("q,p,r,bound_name,value,inequality,omega_exact\n") == 0);
  CHECK(csv.find("13,13,1,hp,3,") != std::string::npos);
  CHECK(csv.find("13,13,1,omega,3,") != std::string::npos);
  // one row per entry plus header and the omega row
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == report.entries.size() + 2);

  std::string table = bound_report_table(report);
  CHECK(table.find("q = 13 = 13^1") != std::string::npos);
  CHECK(table.find("omega") != std::string::npos);
}
