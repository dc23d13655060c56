#include "spd/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spd/errors.hpp"

namespace spd {

namespace {

// Plain sieve for the base primes up to n (used for marking composites in
// segments, so n only ever needs to reach sqrt(hi)).
std::vector<std::uint32_t> simple_primes(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<std::uint8_t> composite(n + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= n; j += i)
      composite[j] = 1;
  }
  return primes;
}

std::uint64_t isqrt64(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    std::size_t segment_bytes) {
  if (hi < lo)
    throw std::invalid_argument("for_each_prime: empty range, hi " +
                                std::to_string(hi) + " < lo " + std::to_string(lo));
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return;
  segment_bytes = std::max<std::size_t>(segment_bytes, 64);

  const std::uint64_t root = isqrt64(hi);
  const std::vector<std::uint32_t> base = simple_primes(static_cast<std::uint32_t>(root));

  std::vector<std::uint8_t> seg(segment_bytes);
  for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + segment_bytes - 1);
    const std::size_t len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    std::fill(seg.begin(), seg.begin() + len, 0);
    for (std::uint32_t p : base) {
      const std::uint64_t p2 = std::uint64_t(p) * p;
      if (p2 > seg_hi) break;
      std::uint64_t start = ((seg_lo + p - 1) / p) * p;
      start = std::max(start, p2);  // p itself stays prime
      for (std::uint64_t m = start; m <= seg_hi; m += p)
        seg[static_cast<std::size_t>(m - seg_lo)] = 1;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (!seg[i]) fn(seg_lo + i);
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

PrimeTable primes_in_range(std::uint64_t lo, std::uint64_t hi,
                           std::size_t segment_bytes) {
  PrimeTable t;
  t.lo = std::max<std::uint64_t>(lo, 2);
  t.hi = hi;
  for_each_prime(lo, hi, [&t](std::uint64_t p) { t.primes.push_back(p); },
                 segment_bytes);
  return t;
}

PrimeFlags PrimeFlags::build(std::uint64_t limit, std::size_t segment_bytes) {
  PrimeFlags f;
  f.limit_ = limit;
  f.words_.assign(static_cast<std::size_t>(limit / 64 + 1), 0);
  for_each_prime(2, std::max<std::uint64_t>(limit, 2),
                 [&f, limit](std::uint64_t p) {
                   if (p <= limit) f.words_[p >> 6] |= std::uint64_t(1) << (p & 63);
                 },
                 segment_bytes);
  return f;
}

SpfTable SpfTable::build(std::uint64_t limit) {
  if (limit > 0xFFFFFFFEull)
    throw ResourceError("SpfTable::build: limit " + std::to_string(limit) +
                        " exceeds the 32-bit entry budget (max 4294967294)");
  SpfTable t;
  t.limit_ = limit;
  t.spf_.assign(static_cast<std::size_t>(limit + 1), 0);

  // Linear sieve: each composite is struck exactly once by its smallest
  // prime factor.
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > t.spf_[i]) break;
      const std::uint64_t v = std::uint64_t(p) * i;
      if (v > limit) break;
      t.spf_[v] = p;
    }
  }
  return t;
}

std::uint32_t SpfTable::spf(std::uint64_t n) const {
  if (n < 2)
    throw std::invalid_argument("SpfTable::spf: n = " + std::to_string(n) +
                                " has no prime factor");
  if (n > limit_)
    throw std::invalid_argument("SpfTable::spf: n = " + std::to_string(n) +
                                " exceeds table limit " + std::to_string(limit_));
  return spf_[n];
}

}  // namespace spd
