#pragma once

// Factorization-derived statistics: prime multiplicities, Euler phi,
// smooth and rough counting. All counts are exact (no density models).

#include <cstdint>
#include <vector>

#include "spd/sieve.hpp"

namespace spd {

struct PrimePower {
  std::uint64_t p = 0;
  std::uint32_t a = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t n = 0;
  std::vector<PrimePower> factors;  // ascending p
};

// n = 1 yields an empty factor list. Throws std::invalid_argument for
// n = 0 and for n beyond the table limit.
Factorization factorize(std::uint64_t n, const SpfTable& spf);

// Reported as P^-(n) when n has no prime factor at all (n = 1).
inline constexpr std::uint64_t kNoPrimeFactor = ~std::uint64_t(0);

struct OmegaStats {
  std::uint32_t omega = 0;             // distinct prime factors
  std::uint32_t big_omega = 0;         // prime factors with multiplicity
  std::uint32_t big_omega_z = 0;       // multiplicity restricted to p <= z
  std::uint32_t big_omega_star_z = 0;  // multiplicity restricted to 2 < p <= z
  std::uint64_t p_plus = 1;            // largest prime factor; 1 for n = 1
  std::uint64_t p_minus = kNoPrimeFactor;  // smallest prime factor
};

OmegaStats omega_stats(std::uint64_t n, std::uint64_t z, const SpfTable& spf);

std::uint64_t euler_phi(std::uint64_t n, const SpfTable& spf);

// #{n <= x : P^+(n) <= y}, counting n = 1. Exact scan; the table overloads
// require spf.limit() >= x, the two-argument forms build a table internally
// and are budgeted to x <= 2*10^7 (ResourceError past that).
std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y);
std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& spf);

// #{n <= x : P^-(n) > z}, counting n = 1.
std::uint64_t count_rough(std::uint64_t x, std::uint64_t z);
std::uint64_t count_rough(std::uint64_t x, std::uint64_t z, const SpfTable& spf);

}  // namespace spd
