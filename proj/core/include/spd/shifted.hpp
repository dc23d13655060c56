#pragma once

// Exact counting of integers n <= x divisible by p - 1 for some prime p > y,
// plus the first/second moment machinery for the representation counts
//   r(n) = #{(p, m) : n = (p-1) m, p prime, p > y, constraints}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spd/sieve.hpp"

namespace spd {

// All d = p - 1 with p prime, p > y and d <= x (so p ranges over (y, x+1]).
// d = 1 appears whenever y < 2: then p = 2 qualifies and divides everything.
struct DivisorSet {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::vector<std::uint64_t> divisors;  // ascending
};

DivisorSet divisor_set(std::uint64_t x, std::uint64_t y,
                       std::size_t segment_bytes = kDefaultSegmentBytes);

inline constexpr std::uint64_t kDefaultMaxX = std::uint64_t(1) << 31;

struct ExactNOptions {
  std::size_t segment_bits = std::size_t(1) << 25;  // marking window per pass
  unsigned threads = 1;                             // result is thread-count invariant
  std::uint64_t max_x = kDefaultMaxX;               // budget; ResourceError past it
};

// N(x, y): marks multiples of every divisor in a segmented bit array and
// popcounts. Exact. Throws std::invalid_argument for x = 0 and ResourceError
// when x exceeds the budget in the options.
std::uint64_t exact_N(std::uint64_t x, std::uint64_t y, const ExactNOptions& opt = {});

// Independent oracle: per-n divisor enumeration with trial primality, no
// shared code with exact_N's marking path. Capped at x <= 10^6.
std::uint64_t brute_N(std::uint64_t x, std::uint64_t y);

// nu(x, y) = sum over primes y < p <= x of 1/(p-1), compensated summation
// in ascending p order.
double nu(std::uint64_t x, std::uint64_t y);

// Union bound: sum over primes y < p <= x+1 of floor(x/(p-1)).
std::uint64_t mertens_upper(std::uint64_t x, std::uint64_t y);

struct PrimeWindow {
  std::uint64_t lo = 0;  // p > lo
  std::uint64_t hi = 0;  // p <= hi
};

// m must split as m = k h with k <= k_max and P^-(h) > h_floor.
// (k is then forced to be the h_floor-smooth part of m.)
struct CaseASplit {
  std::uint64_t k_max = 0;
  std::uint64_t h_floor = 0;
};

struct RepresentationConstraints {
  std::optional<std::uint32_t> w_cap;  // Omega((p-1) m, z) <= w_cap
  std::uint64_t z = 0;                 // cutoff inside Omega(., z); >= 2 when w_cap set
  std::optional<PrimeWindow> p_window;
  std::optional<CaseASplit> case_a;    // requires p_window with hi <= h_floor

  bool unconstrained() const { return !w_cap && !p_window && !case_a; }
};

struct RCountOptions {
  std::size_t segment_bits = std::size_t(1) << 25;
  std::uint64_t max_entries = 100'000'000;  // sparse map budget
  std::uint64_t max_x = kDefaultMaxX;
};

// Sparse (n, r(n)) pairs with r(n) > 0, ascending n. Iterates (p, m) pairs.
std::vector<std::pair<std::uint64_t, std::uint32_t>> r_counts(
    std::uint64_t x, std::uint64_t y, const RepresentationConstraints& c = {},
    const RCountOptions& opt = {});

struct MomentReport {
  std::uint64_t M1 = 0;        // sum of r(n)
  std::uint64_t M2 = 0;        // sum of r(n)^2
  std::uint64_t M2_prime = 0;  // M2 - M1
  std::int64_t lower_ie = 0;   // M1 - M2_prime (may be negative)
  double lower_cs = 0;         // M1^2 / M2, rounded from the exact ratio below
  unsigned __int128 lower_cs_num = 0;  // M1^2, exact
  std::uint64_t lower_cs_den = 0;      // M2 (0 when the sum is empty)
  std::uint64_t n_with_r_positive = 0;
};

MomentReport moments(std::uint64_t x, std::uint64_t y,
                     const RepresentationConstraints& c = {},
                     const RCountOptions& opt = {});

}  // namespace spd
