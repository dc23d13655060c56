#include "spd/shifted.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <thread>

#include "spd/errors.hpp"

namespace spd {
namespace {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Omega tables for the constrained paths live in flat arrays indexed by the
// cofactor m <= x / min(divisor); cap how large that may get.
constexpr u64 kCofactorTableBudget = 50'000'000;

std::vector<u32> primes_up_to(u64 limit) {
  std::vector<u32> out;
  if (limit >= 2)
    for_each_prime(2, limit, [&](u64 p) { out.push_back(static_cast<u32>(p)); });
  return out;
}

// Omega(v, z) by trial division against a list of all primes <= z.
u32 omega_upto(u64 v, const std::vector<u32>& primes_z, u64 z) {
  u32 count = 0;
  for (u32 q : primes_z) {
    if (u64(q) * q > v) break;
    while (v % q == 0) {
      v /= q;
      ++count;
    }
  }
  if (v > 1 && v <= z) ++count;  // residual is prime here
  return count;
}

// Per-run tables for the optional constraints on (p, m) pairs.
struct Prepared {
  std::vector<u64> divisors;  // p - 1, filtered by the prime window
  bool use_wcap = false;
  u32 wcap = 0;
  std::vector<u8> omega_d;   // Omega(d, z), parallel to divisors
  std::vector<u8> omega_m;   // Omega(m, z) for m <= m_max
  bool use_case_a = false;
  u64 k_max = 0;
  std::vector<u32> smooth_part;  // h_floor-smooth part of m, for m <= m_max

  bool admissible(std::size_t di, u64 m) const {
    if (use_wcap && omega_d[di] + u32(omega_m[m]) > wcap) return false;
    if (use_case_a && smooth_part[m] > k_max) return false;
    return true;
  }
};

// Omega(m, z) for all m <= m_max, by sieving prime powers.
std::vector<u8> omega_table(u64 m_max, u64 z) {
  std::vector<u8> t(m_max + 1, 0);
  auto primes = primes_up_to(std::min(z, m_max));
  for (u32 q : primes)
    for (u64 step = q; step <= m_max; step *= q) {
      for (u64 j = step; j <= m_max; j += step) ++t[j];
      if (step > m_max / q) break;
    }
  return t;
}

// Largest t-smooth divisor of m, for all m <= m_max.
std::vector<u32> smooth_part_table(u64 m_max, u64 t) {
  std::vector<u32> s(m_max + 1, 1);
  auto primes = primes_up_to(std::min(t, m_max));
  for (u32 q : primes)
    for (u64 step = q; step <= m_max; step *= q) {
      for (u64 j = step; j <= m_max; j += step) s[j] *= q;
      if (step > m_max / q) break;
    }
  return s;
}

Prepared prepare(u64 x, u64 y, const RepresentationConstraints& c,
                 std::size_t segment_bytes) {
  if (c.w_cap && c.z < 2)
    throw std::invalid_argument("representation constraints: w_cap requires z >= 2");
  if (c.case_a) {
    if (c.case_a->k_max < 1 || c.case_a->h_floor < 2)
      throw std::invalid_argument(
          "representation constraints: case_a needs k_max >= 1 and h_floor >= 2");
    if (!c.p_window)
      throw std::invalid_argument(
          "representation constraints: case_a requires a prime window");
    if (c.p_window->hi > c.case_a->h_floor)
      throw std::invalid_argument(
          "representation constraints: prime window must stay at or below h_floor "
          "so the rough factor h cannot itself be a shifted prime in range");
  }

  Prepared pre;
  DivisorSet ds = divisor_set(x, y, segment_bytes);
  if (c.p_window) {
    for (u64 d : ds.divisors) {
      u64 p = d + 1;
      if (p > c.p_window->lo && p <= c.p_window->hi) pre.divisors.push_back(d);
    }
  } else {
    pre.divisors = std::move(ds.divisors);
  }
  if (pre.divisors.empty()) return pre;

  u64 m_max = x / pre.divisors.front();
  if ((c.w_cap || c.case_a) && m_max > kCofactorTableBudget)
    throw ResourceError(
        "representation constraints: cofactor table would need " +
        std::to_string(m_max) + " entries, over the budget of " +
        std::to_string(kCofactorTableBudget) +
        " (narrow the prime window or lower x)");

  if (c.w_cap) {
    pre.use_wcap = true;
    pre.wcap = *c.w_cap;
    auto primes_z = primes_up_to(c.z);
    pre.omega_d.reserve(pre.divisors.size());
    for (u64 d : pre.divisors)
      pre.omega_d.push_back(static_cast<u8>(
          std::min<u32>(omega_upto(d, primes_z, c.z), 255)));
    pre.omega_m = omega_table(m_max, c.z);
  }
  if (c.case_a) {
    pre.use_case_a = true;
    pre.k_max = c.case_a->k_max;
    pre.smooth_part = smooth_part_table(m_max, c.case_a->h_floor);
  }
  return pre;
}

// Drives the segmented representation count: fills a u16 multiplicity array
// per window of n values and hands it to the sink. r(n) for x within the
// budget is far below 65535 (the divisor count of n already bounds it), so
// u16 cannot wrap.
template <class Sink>
void count_representations(u64 x, const Prepared& pre, std::size_t segment_bits,
                           Sink&& sink) {
  if (pre.divisors.empty() || x == 0) return;
  std::size_t seg_len = std::max<std::size_t>(segment_bits, 4096);
  std::vector<u16> cnt(std::min<u64>(seg_len, x));
  for (u64 lo = 1; lo <= x; lo += cnt.size()) {
    u64 hi = std::min(x, lo + cnt.size() - 1);
    std::fill(cnt.begin(), cnt.begin() + (hi - lo + 1), 0);
    for (std::size_t di = 0; di < pre.divisors.size(); ++di) {
      u64 d = pre.divisors[di];
      if (d > hi) break;
      u64 m = (lo + d - 1) / d;
      if (pre.use_wcap || pre.use_case_a) {
        for (u64 n = m * d; n <= hi; ++m, n += d)
          if (pre.admissible(di, m)) ++cnt[n - lo];
      } else {
        for (u64 n = m * d; n <= hi; n += d) ++cnt[n - lo];
      }
    }
    sink(lo, cnt.data(), static_cast<std::size_t>(hi - lo + 1));
  }
}

void check_x_budget(const char* what, u64 x, u64 max_x) {
  if (x > max_x)
    throw ResourceError(std::string(what) + ": x = " + std::to_string(x) +
                        " exceeds the budget max_x = " + std::to_string(max_x) +
                        " (raise max_x in the options; the CLI honours SPD_MAX_X)");
}

}  // namespace

DivisorSet divisor_set(u64 x, u64 y, std::size_t segment_bytes) {
  if (x == 0) throw std::invalid_argument("divisor_set: x must be >= 1");
  DivisorSet ds;
  ds.x = x;
  ds.y = y;
  u64 p_lo = std::max<u64>(y + 1, 2);
  u64 p_hi = x + 1;  // d = p - 1 <= x
  if (p_lo <= p_hi)
    for_each_prime(p_lo, p_hi, [&](u64 p) { ds.divisors.push_back(p - 1); },
                   segment_bytes);
  return ds;
}

std::uint64_t exact_N(u64 x, u64 y, const ExactNOptions& opt) {
  if (x == 0) throw std::invalid_argument("exact_N: x must be >= 1");
  check_x_budget("exact_N", x, opt.max_x);

  DivisorSet ds = divisor_set(x, y);
  if (ds.divisors.empty()) return 0;
  if (ds.divisors.front() == 1) return x;  // p = 2 divides everything via d = 1

  std::size_t seg_bits = std::max<std::size_t>(opt.segment_bits, 1u << 12);
  unsigned threads = std::max(1u, opt.threads);
  u64 n_segments = (x + seg_bits - 1) / seg_bits;
  threads = static_cast<unsigned>(
      std::min<u64>(threads, n_segments));

  std::atomic<u64> next_segment{0};
  std::atomic<u64> total{0};
  auto worker = [&] {
    std::vector<u64> bits(seg_bits / 64 + 1);
    for (;;) {
      u64 si = next_segment.fetch_add(1, std::memory_order_relaxed);
      if (si >= n_segments) return;
      u64 lo = 1 + si * seg_bits;
      u64 hi = std::min(x, lo + seg_bits - 1);
      std::size_t words = (hi - lo) / 64 + 1;
      std::memset(bits.data(), 0, words * sizeof(u64));
      for (u64 d : ds.divisors) {
        if (d > hi) break;
        for (u64 n = ((lo + d - 1) / d) * d; n <= hi; n += d) {
          u64 i = n - lo;
          bits[i >> 6] |= u64(1) << (i & 63);
        }
      }
      u64 sub = 0;
      for (std::size_t w = 0; w < words; ++w) sub += std::popcount(bits[w]);
      total.fetch_add(sub, std::memory_order_relaxed);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return total.load();
}

std::uint64_t brute_N(u64 x, u64 y) {
  constexpr u64 kBruteCap = 1'000'000;
  if (x == 0) throw std::invalid_argument("brute_N: x must be >= 1");
  if (x > kBruteCap)
    throw ResourceError("brute_N: x = " + std::to_string(x) +
                        " exceeds the oracle cap of " + std::to_string(kBruteCap) +
                        " (use exact_N for larger x)");

  // Plain sieve of flags up to x + 1; deliberately not the segmented code path.
  std::vector<u8> prime(x + 2, 1);
  prime[0] = prime[1] = 0;
  for (u64 i = 2; i * i <= x + 1; ++i)
    if (prime[i])
      for (u64 j = i * i; j <= x + 1; j += i) prime[j] = 0;

  // Local least-factor table, also independent of the library sieve.
  std::vector<u32> least(x + 1, 0);
  for (u64 i = 2; i <= x; ++i)
    if (!least[i])
      for (u64 j = i; j <= x; j += i)
        if (!least[j]) least[j] = static_cast<u32>(i);

  auto hit = [&](u64 d) { return d >= y && prime[d + 1]; };  // p = d + 1 > y
  u64 count = 0;
  std::pair<u64, u32> pf[20];
  for (u64 n = 1; n <= x; ++n) {
    int np = 0;
    for (u64 m = n; m > 1;) {
      u64 p = least[m];
      u32 e = 0;
      do {
        m /= p;
        ++e;
      } while (m % p == 0);
      pf[np++] = {p, e};
    }
    // walk the divisor lattice, stopping at the first qualifying divisor
    bool found = false;
    auto dfs = [&](auto&& self, int i, u64 d) -> void {
      if (found) return;
      if (i == np) {
        found = hit(d);
        return;
      }
      u64 v = d;
      for (u32 e = 0; e <= pf[i].second && !found; ++e) {
        self(self, i + 1, v);
        v *= pf[i].first;
      }
    };
    dfs(dfs, 0, 1);
    count += found;
  }
  return count;
}

double nu(u64 x, u64 y) {
  if (y >= x) return 0.0;
  double sum = 0.0, comp = 0.0;
  for_each_prime(y + 1, x, [&](u64 p) {
    double term = 1.0 / static_cast<double>(p - 1);
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  });
  return sum + comp;
}

std::uint64_t mertens_upper(u64 x, u64 y) {
  if (x == 0) throw std::invalid_argument("mertens_upper: x must be >= 1");
  u64 sum = 0;
  u64 p_lo = std::max<u64>(y + 1, 2);
  if (p_lo > x + 1) return 0;
  for_each_prime(p_lo, x + 1, [&](u64 p) { sum += x / (p - 1); });
  return sum;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> r_counts(
    u64 x, u64 y, const RepresentationConstraints& c, const RCountOptions& opt) {
  if (x == 0) throw std::invalid_argument("r_counts: x must be >= 1");
  check_x_budget("r_counts", x, opt.max_x);

  Prepared pre = prepare(x, y, c, kDefaultSegmentBytes);
  std::vector<std::pair<u64, u32>> out;
  count_representations(x, pre, opt.segment_bits,
                        [&](u64 lo, const u16* cnt, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      if (cnt[i] == 0) continue;
      if (out.size() == opt.max_entries)
        throw ResourceError("r_counts: more than " +
                            std::to_string(opt.max_entries) +
                            " integers carry a representation; raise "
                            "max_entries in the options or add constraints");
      out.emplace_back(lo + i, cnt[i]);
    }
  });
  return out;
}

MomentReport moments(u64 x, u64 y, const RepresentationConstraints& c,
                     const RCountOptions& opt) {
  if (x == 0) throw std::invalid_argument("moments: x must be >= 1");
  check_x_budget("moments", x, opt.max_x);

  Prepared pre = prepare(x, y, c, kDefaultSegmentBytes);
  MomentReport rep;
  count_representations(x, pre, opt.segment_bits,
                        [&](u64, const u16* cnt, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      u64 r = cnt[i];
      if (r == 0) continue;
      rep.M1 += r;
      rep.M2 += r * r;
      ++rep.n_with_r_positive;
    }
  });
  rep.M2_prime = rep.M2 - rep.M1;
  rep.lower_ie = static_cast<std::int64_t>(rep.M1) -
                 static_cast<std::int64_t>(rep.M2_prime);
  rep.lower_cs_num = static_cast<unsigned __int128>(rep.M1) * rep.M1;
  rep.lower_cs_den = rep.M2;
  rep.lower_cs = rep.M2 == 0 ? 0.0
                             : static_cast<double>(rep.lower_cs_num) /
                                   static_cast<double>(rep.M2);
  return rep;
}

}  // namespace spd
