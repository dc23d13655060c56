#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spd/errors.hpp"
#include "spd/shifted.hpp"
#include "spd/sieve.hpp"

using spd::ExactNOptions;
using spd::MomentReport;
using spd::RCountOptions;
using spd::RepresentationConstraints;
using u64 = std::uint64_t;

namespace {

bool is_prime_slow(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// third implementation, shared with nothing: divisor scan + trial primality
u64 oracle_N(u64 x, u64 y) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool hit = false;
    for (u64 d = 1; d * d <= n && !hit; ++d) {
      if (n % d != 0) continue;
      if (d >= y && is_prime_slow(d + 1)) hit = true;
      u64 e = n / d;
      if (e >= y && is_prime_slow(e + 1)) hit = true;
    }
    if (hit) ++count;
  }
  return count;
}

bool rough_above(u64 m, u64 bound) {  // P^-(m) > bound
  if (m == 1) return true;
  for (u64 d = 2; d <= bound; ++d)
    if (m % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("exact_N small values") {
  CHECK(spd::exact_N(10, 2) == 5);
  CHECK(spd::exact_N(10, 10) == 1);
  CHECK(spd::exact_N(10, 11) == 0);
  CHECK(spd::exact_N(1, 1) == 1);
  for (u64 x : {u64(1), u64(5), u64(100)})
    CHECK(spd::exact_N(x, 1) == x);  // p = 2 gives divisor 1
  CHECK(spd::exact_N(10, 10) == 1);  // 11 prime
  CHECK(spd::exact_N(8, 8) == 0);    // 9 composite
  CHECK_THROWS_AS(spd::exact_N(0, 1), std::invalid_argument);
  ExactNOptions small_budget;
  small_budget.max_x = 1000;
  CHECK_THROWS_AS(spd::exact_N(2000, 10, small_budget), spd::ResourceError);
}

TEST_CASE("brute_N small values") {
  CHECK(spd::brute_N(10, 2) == 5);
  CHECK(spd::brute_N(10, 10) == 1);
  CHECK(spd::brute_N(10, 11) == 0);
  CHECK(spd::brute_N(1, 1) == 1);
}

TEST_CASE("exact_N matches brute_N and the in-test oracle") {
  for (u64 x = 1; x <= 400; ++x) {
    u64 isq = u64(std::llround(std::floor(std::sqrt(double(x)))));
    for (u64 y : {u64(1), u64(2), u64(3), u64(10), isq,
                  std::max<u64>(1, x / 2), x}) {
      u64 got = spd::exact_N(x, y);
      CHECK(got == spd::brute_N(x, y));
      if (x <= 300) CHECK(got == oracle_N(x, y));
    }
  }
  for (u64 x : {u64(1000), u64(2500), u64(5000)}) {
    u64 isq = u64(std::llround(std::floor(std::sqrt(double(x)))));
    for (u64 y : {u64(1), u64(2), u64(10), isq, x / 2, x})
      CHECK(spd::exact_N(x, y) == spd::brute_N(x, y));
  }
}

TEST_CASE("exact_N monotonicity and union bound") {
  for (u64 y : {u64(1), u64(5), u64(20)}) {
    u64 prev = 0;
    for (u64 x = 10; x <= 200; x += 10) {
      u64 cur = spd::exact_N(x, y);
      CHECK(cur >= prev);  // nondecreasing in x
      prev = cur;
    }
  }
  for (u64 x : {u64(50), u64(100), u64(400)}) {
    u64 prev = spd::exact_N(x, 1);
    for (u64 y : {u64(2), u64(5), u64(10), u64(20), x}) {
      u64 cur = spd::exact_N(x, y);
      CHECK(cur <= prev);  // nonincreasing in y
      prev = cur;
      CHECK(cur <= spd::mertens_upper(x, y));
    }
  }
}

TEST_CASE("exact_N invariant under segmenting and threading") {
  u64 base = spd::exact_N(100000, 50);
  ExactNOptions opt;
  opt.segment_bits = std::size_t(1) << 12;
  opt.threads = 3;
  CHECK(spd::exact_N(100000, 50, opt) == base);
}

TEST_CASE("divisor_set contents") {
  auto ds = spd::divisor_set(100, 10);
  CHECK(std::is_sorted(ds.divisors.begin(), ds.divisors.end()));
  for (u64 d : ds.divisors) {
    CHECK(d >= 10);  // p = d + 1 > 10
    CHECK(d <= 100);
    CHECK(is_prime_slow(d + 1));
  }
  auto primes = spd::primes_in_range(11, 101);
  REQUIRE(primes.primes.size() == ds.divisors.size());
  for (std::size_t i = 0; i < primes.primes.size(); ++i)
    CHECK(primes.primes[i] - 1 == ds.divisors[i]);
  auto tiny_segments = spd::divisor_set(100, 10, 64);
  CHECK(tiny_segments.divisors == ds.divisors);
}

TEST_CASE("nu and mertens_upper") {
  CHECK(spd::nu(100, 10) ==
        doctest::Approx(0.657478356749072).epsilon(1e-12));
  CHECK(spd::nu(5, 5) == 0.0);
  CHECK(spd::nu(3, 2) == 0.5);
  CHECK(spd::mertens_upper(10, 2) == 9);
  CHECK(spd::mertens_upper(10, 11) == 0);
}

TEST_CASE("r_counts sparse table") {
  auto rc = spd::r_counts(10, 2);
  std::vector<std::pair<u64, std::uint32_t>> expect = {
      {2, 1}, {4, 2}, {6, 2}, {8, 2}, {10, 2}};
  CHECK(rc == expect);
  CHECK(spd::r_counts(10, 11).empty());

  RCountOptions tiny;
  tiny.max_entries = 3;
  CHECK_THROWS_AS(spd::r_counts(100, 2, {}, tiny), spd::ResourceError);
}

TEST_CASE("r_counts constraint gives a subtable") {
  auto full = spd::r_counts(100, 10);
  RepresentationConstraints c;
  c.w_cap = 1;
  c.z = 100;
  auto capped = spd::r_counts(100, 10, c);
  for (const auto& [n, r] : capped) {
    auto it = std::lower_bound(full.begin(), full.end(),
                               std::pair<u64, std::uint32_t>{n, 0});
    REQUIRE(it != full.end());
    REQUIRE(it->first == n);
    CHECK(r <= it->second);
  }
}

TEST_CASE("moments at (10, 2)") {
  MomentReport m = spd::moments(10, 2);
  CHECK(m.M1 == 9);
  CHECK(m.M2 == 17);
  CHECK(m.M2_prime == 8);
  CHECK(m.lower_ie == 1);
  CHECK(m.lower_cs == doctest::Approx(81.0 / 17).epsilon(1e-15));
  CHECK(u64(m.lower_cs_num) == 81);
  CHECK(m.lower_cs_den == 17);
  CHECK(m.n_with_r_positive == 5);
}

TEST_CASE("unconstrained M1 equals the union-bound sum") {
  for (auto [x, y] : {std::pair<u64, u64>{100, 10},
                      {1000, 30},
                      {5000, 2},
                      {10000, 100}}) {
    MomentReport m = spd::moments(x, y);
    CHECK(m.M1 == spd::mertens_upper(x, y));
    CHECK(m.n_with_r_positive == spd::exact_N(x, y));
    CHECK(m.M2 >= m.M1);
    CHECK(double(m.n_with_r_positive) >= m.lower_cs);
    CHECK(m.n_with_r_positive >= u64(std::max<std::int64_t>(m.lower_ie, 0)));
    CHECK(m.n_with_r_positive <= m.M1);
  }
}

TEST_CASE("constraints only remove representations") {
  const u64 x = 2000, y = 10;
  MomentReport full = spd::moments(x, y);

  RepresentationConstraints capped;
  capped.w_cap = 2;
  capped.z = 50;
  MomentReport mc = spd::moments(x, y, capped);
  CHECK(mc.M1 <= full.M1);

  RepresentationConstraints narrow, wide;
  narrow.p_window = spd::PrimeWindow{10, 50};
  wide.p_window = spd::PrimeWindow{10, 1000};
  MomentReport mn = spd::moments(x, y, narrow);
  MomentReport mw = spd::moments(x, y, wide);
  CHECK(mn.M1 <= mw.M1);
  CHECK(mw.M1 <= full.M1);
}

TEST_CASE("case_a split against direct enumeration") {
  const u64 x = 20000, y = 100;
  RepresentationConstraints c;
  c.p_window = spd::PrimeWindow{100, 158};
  c.case_a = spd::CaseASplit{1, 158};  // k = 1 forced: m itself must be rough
  MomentReport m = spd::moments(x, y, c);

  u64 expect = 0;
  for (u64 p = 101; p <= 158; ++p) {
    if (!is_prime_slow(p)) continue;
    for (u64 mm = 1; mm <= x / (p - 1); ++mm)
      if (rough_above(mm, 158)) ++expect;
  }
  CHECK(m.M1 == expect);
  CHECK(m.n_with_r_positive <= m.M1);
}

TEST_CASE("constraint validation") {
  RepresentationConstraints bad_z;
  bad_z.w_cap = 2;  // z missing
  CHECK_THROWS_AS(spd::r_counts(100, 10, bad_z), std::invalid_argument);

  RepresentationConstraints bad_case;
  bad_case.case_a = spd::CaseASplit{1, 100};  // p_window missing
  CHECK_THROWS_AS(spd::r_counts(100, 10, bad_case), std::invalid_argument);
}
