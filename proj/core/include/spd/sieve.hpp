#pragma once

// Prime generation and smallest-prime-factor tables. Everything is exact and
// deterministic: results never depend on segment size or thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spd {

inline constexpr std::size_t kDefaultSegmentBytes = 1u << 20;

// Primes in [lo, hi], ascending. lo is clamped to 2 on construction.
struct PrimeTable {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> primes;
};

// Streams the primes in [lo, hi] in ascending order through fn.
// lo < 2 is treated as 2. Throws std::invalid_argument if hi < lo.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    std::size_t segment_bytes = kDefaultSegmentBytes);

PrimeTable primes_in_range(std::uint64_t lo, std::uint64_t hi,
                           std::size_t segment_bytes = kDefaultSegmentBytes);

// Bit-packed primality flags for all n in [0, limit].
class PrimeFlags {
 public:
  PrimeFlags() = default;
  static PrimeFlags build(std::uint64_t limit,
                          std::size_t segment_bytes = kDefaultSegmentBytes);

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const {
    return n <= limit_ && ((words_[n >> 6] >> (n & 63)) & 1u) != 0;
  }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_{0};
};

// Smallest prime factor for every n in [2, limit]. Entries are 32-bit, so
// limit is capped at 2^32 - 2; build() throws ResourceError past that (or
// past available memory ambitions of the caller; 4 bytes per integer).
class SpfTable {
 public:
  SpfTable() = default;
  static SpfTable build(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  // Throws std::invalid_argument for n < 2 (no prime factor) and
  // n > limit (table too small).
  std::uint32_t spf(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
};

}  // namespace spd
