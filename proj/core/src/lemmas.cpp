#include "spd/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spd/asym.hpp"
#include "spd/errors.hpp"
#include "spd/sieve.hpp"

namespace spd {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KahanSum {
  double sum = 0, comp = 0;
  void add(double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

double factorial(u32 k) {
  double f = 1;
  for (u32 i = 2; i <= k; ++i) f *= i;
  return f;
}

double loglog(double v) { return std::log(std::log(v)); }

// One walk of the spf chain collecting everything the scans need.
struct ChainStats {
  u32 omega = 0;        // distinct primes
  u32 big = 0;          // total multiplicity
  u32 big_z = 0;        // multiplicity of primes <= z
  u32 big_star_z = 0;   // multiplicity of odd primes <= z
  u64 p_plus = 1;       // largest prime factor (1 for n = 1)
  double phi = 1;       // totient, as double (scan weights only need doubles)
};

ChainStats chain_stats(u64 n, u64 z, const SpfTable& spf) {
  ChainStats s;
  while (n > 1) {
    u64 p = spf.spf(n);
    u32 a = 0;
    do {
      n /= p;
      ++a;
    } while (n > 1 && spf.spf(n) == p);
    ++s.omega;
    s.big += a;
    if (p <= z) {
      s.big_z += a;
      if (p > 2) s.big_star_z += a;
    }
    s.p_plus = p;
    s.phi *= double(p - 1) * std::pow(double(p), double(a - 1));
  }
  return s;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

void require_spf(const SpfTable& spf, u64 needed, const char* who) {
  if (spf.limit() < needed)
    throw std::invalid_argument(std::string(who) + ": factor table covers only " +
                                std::to_string(spf.limit()) + " but " +
                                std::to_string(needed) + " is needed");
}

double finish_ratio(RatioReport& r) {
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs
                      : (r.lhs > 0 ? kInf : 1.0);
  return r.ratio;
}

void set_tail(RatioReport& r, double tail) {
  r.tail_bound = tail;
  r.tail_ok = tail < 0.01 * r.lhs;
}

// Rankin-style bound on the mass beyond n_max of
//   sum over P+(n) <= p_limit, [weight v0 per prime <= z] of
//   n^{-(1-xi)} (n/phi(n))^c.
// Valid bound on the constrained tail when v0_exponent_shift is chosen so
// v0^{Omega(n,z) - shift} >= 1 on the constrained set.  Minimized over a small
// (s, v0) grid; the prime product is exact.
double rankin_tail(u64 n_max, const std::vector<u32>& primes, u64 z, double xi,
                   double c, double shift, bool v0_at_least_one) {
  double best = kInf;
  static const double kS[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  static const double kV0lo[] = {0.5, 0.7, 1.0};
  static const double kV0hi[] = {1.0, 1.2, 1.4, 1.6, 1.8};
  for (double s : kS) {
    double expo = 1.0 - xi - s;
    if (expo <= 0.05) continue;
    for (double v0 : (v0_at_least_one ? std::vector<double>(std::begin(kV0hi), std::end(kV0hi))
                                      : std::vector<double>(std::begin(kV0lo), std::end(kV0lo)))) {
      if (v0 * std::pow(2.0, -expo) >= 0.999) continue;  // geometric series must converge
      double log_prod = 0;
      bool ok = true;
      for (u32 p : primes) {
        double vp = p <= z ? v0 : 1.0;
        double q = vp * std::pow(double(p), -expo);
        if (q >= 0.999) {
          ok = false;
          break;
        }
        log_prod += std::log1p(std::pow(double(p) / (p - 1.0), c) * q / (1.0 - q));
      }
      if (!ok) continue;
      double log_tail = log_prod - s * std::log(double(n_max)) - shift * std::log(v0);
      double tail = log_tail > 700 ? kInf : std::exp(log_tail);
      best = std::min(best, tail);
    }
  }
  return best;
}

std::vector<u32> prime_list(u64 limit) {
  std::vector<u32> out;
  if (limit >= 2)
    for_each_prime(2, limit, [&](u64 p) { out.push_back(static_cast<u32>(p)); });
  return out;
}

// Enumerates every n <= n_max whose prime factors all lie in `primes`,
// calling fn(n, omega_big, phi).
template <class Fn>
void for_each_smooth(u64 n_max, const std::vector<u32>& primes, Fn&& fn) {
  struct Rec {
    u64 n_max;
    const std::vector<u32>& primes;
    Fn& fn;
    void walk(u64 n, u32 big, double phi, std::size_t idx) {
      fn(n, big, phi);
      for (std::size_t i = idx; i < primes.size(); ++i) {
        u64 p = primes[i];
        if (p > n_max / n) break;
        u64 m = n * p;
        double ph = phi * (p - 1.0);
        for (u32 a = 1;; ++a) {
          walk(m, big + a, ph, i + 1);
          if (p > n_max / m) break;
          m *= p;
          ph *= double(p);
        }
      }
    }
  } rec{n_max, primes, fn};
  rec.walk(1, 0, 1.0, 0);
}

}  // namespace

const char* to_string(Direction d) {
  switch (d) {
    case Direction::upper: return "upper";
    case Direction::lower: return "lower";
    default: return "two_sided";
  }
}

RatioReport selberg_ratio(u64 x, u32 k, const SpfTable& spf) {
  require(x >= 4, "selberg_ratio: requires x >= 4");
  require_spf(spf, x, "selberg_ratio");

  RatioReport r;
  r.lemma_id = "selberg";
  r.params = {{"x", double(x)}, {"k", double(k)}};
  r.direction = Direction::two_sided;
  r.applicable = double(k) <= 1.9 * loglog(double(x));
  if (!r.applicable) r.note = "k above 1.9 log log x";

  KahanSum lhs;
  if (k == 0) lhs.add(1.0);  // n = 1
  for (u64 n = 2; n <= x; ++n)
    if (chain_stats(n, 1, spf).big == k) lhs.add(1.0 / double(n));
  r.lhs = lhs.value();
  r.rhs = std::pow(loglog(double(x)), double(k)) / factorial(k);
  finish_ratio(r);
  return r;
}

RatioReport halasz_counts(u64 x, u64 z, u32 m, bool star, HalaszMode mode,
                          const SpfTable& spf) {
  require(x >= z && z >= 3, "halasz_counts: requires x >= z >= 3");
  require_spf(spf, x, "halasz_counts");

  RatioReport r;
  r.lemma_id = mode == HalaszMode::count ? "halasz_count" : "halasz_recip";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"m", double(m)},
              {"star", star ? 1.0 : 0.0}};
  r.direction = Direction::upper;
  double llz = loglog(double(z));
  r.applicable = double(m) <= (star ? 2.9 : 1.9) * llz;
  if (!r.applicable)
    r.note = star ? "m above 2.9 log log z" : "m above 1.9 log log z";

  u64 count = (m == 0) ? 1 : 0;  // n = 1 has all Omega counts 0
  KahanSum recip;
  if (m == 0) recip.add(1.0);
  for (u64 n = 2; n <= x; ++n) {
    ChainStats s = chain_stats(n, z, spf);
    u32 val = star ? s.big_star_z : s.big_z;
    if (val == m) {
      ++count;
      if (mode == HalaszMode::recip_sum) recip.add(1.0 / double(n));
    }
  }
  double poisson_term = std::pow(llz, double(m)) / factorial(m);
  if (mode == HalaszMode::count) {
    r.lhs = double(count);
    r.rhs = double(x) * poisson_term / std::log(double(z));
  } else {
    r.lhs = recip.value();
    r.rhs = std::log(double(x)) / std::log(double(z)) * poisson_term;
  }
  finish_ratio(r);
  return r;
}

RatioReport hall_pair_lower(u64 x, u64 z, u32 m, const SpfTable& spf) {
  require(x >= z && z >= 3, "hall_pair_lower: requires x >= z >= 3");
  require_spf(spf, x, "hall_pair_lower");

  RatioReport r;
  r.lemma_id = "hall_lower";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"m", double(m)}};
  r.direction = Direction::lower;
  double llz = loglog(double(z));
  double d = delta_const();
  r.applicable = double(m) >= d * llz && double(m) <= (2.0 - d) * llz;
  if (!r.applicable) r.note = "m outside [delta, 2 - delta] log log z";

  u64 count = m == 0 ? 1 : 0;  // n = 1 has Omega(1,z) = 0 in {m, m+1}
  for (u64 n = 2; n <= x; ++n) {
    u32 val = chain_stats(n, z, spf).big_z;
    if (val == m || val == m + 1) ++count;
  }
  r.lhs = double(count);
  r.rhs = double(x) * std::pow(llz, double(m)) / (factorial(m) * std::log(double(z)));
  finish_ratio(r);
  return r;
}

namespace {

RatioReport timofeev_core(u64 x, u64 z, u32 m, bool star, bool triple,
                          const SpfTable& spf) {
  require(x >= z && z >= 3, "timofeev: requires x >= z >= 3");
  require_spf(spf, x, "timofeev");

  RatioReport r;
  r.lemma_id = triple ? "timofeev_lower" : "timofeev_upper";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"m", double(m)}};
  if (!triple) r.params.push_back({"star", star ? 1.0 : 0.0});
  r.direction = triple ? Direction::lower : Direction::upper;
  double llz = loglog(double(z));
  double d = delta_const();
  r.applicable = triple ? (double(m) >= d * llz && double(m) <= (2.0 - d) * llz)
                        : double(m) <= (2.0 - d) * llz;
  if (!r.applicable) r.note = "m outside the admissible multiple of log log z";
  if (z < 100)
    r.note += std::string(r.note.empty() ? "" : "; ") +
              "z below the nominal threshold for the stated constant";

  u64 count = 0;
  for (u64 p = 2; p <= x; ++p) {
    if (!spf.is_prime(p)) continue;
    u32 val;
    if (p == 2) {
      val = 0;  // p - 1 = 1
    } else {
      ChainStats s = chain_stats(p - 1, z, spf);
      val = star ? s.big_star_z : s.big_z;
    }
    if (triple ? (val >= m && val <= m + 2) : (val == m)) ++count;
  }
  r.lhs = double(count);
  r.rhs = double(x) * std::pow(llz, double(m)) /
          (factorial(m) * std::log(double(x)) * std::log(double(z)));
  finish_ratio(r);
  return r;
}

}  // namespace

RatioReport timofeev_counts(u64 x, u64 z, u32 m, bool star, const SpfTable& spf) {
  return timofeev_core(x, z, m, star, false, spf);
}

RatioReport timofeev_triple_lower(u64 x, u64 z, u32 m, const SpfTable& spf) {
  return timofeev_core(x, z, m, false, true, spf);
}

RatioReport recip_weighted_sum(u64 x, u64 z, u32 k, double xi, double c,
                               const SpfTable& spf, const TruncationOptions& trunc) {
  require(z >= 8 && z <= x, "recip_weighted_sum: requires e^2 <= z <= x");
  require_spf(spf, trunc.n_max, "recip_weighted_sum");

  RatioReport r;
  r.lemma_id = "recip";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"k", double(k)},
              {"xi", xi}, {"c", c}, {"n_max", double(trunc.n_max)}};
  r.direction = Direction::upper;
  double llz = loglog(double(z));
  double xi_max = 1.0 / (5.0 * std::log(double(x)));
  r.applicable = double(k) <= 1.8 * llz && xi >= 0 && xi <= xi_max && c >= 0 && c <= 10;
  if (!r.applicable) r.note = "k, xi or c outside the stated ranges";

  KahanSum lhs;
  if (k == 0) lhs.add(1.0);  // n = 1
  for (u64 n = 2; n <= trunc.n_max; ++n) {
    ChainStats s = chain_stats(n, z, spf);
    if (s.big_z != k || s.p_plus > x) continue;
    double term = std::pow(double(n), xi - 1.0);
    if (c != 0) term *= std::pow(double(n) / s.phi, c);
    lhs.add(term);
  }
  r.lhs = lhs.value();
  r.rhs = std::log(double(x)) / std::log(double(z)) *
          std::pow(llz, double(k)) / factorial(k);
  finish_ratio(r);
  set_tail(r, rankin_tail(trunc.n_max, prime_list(x), z, xi, c, double(k), false));
  return r;
}

RatioReport cct_count(u64 x, u64 q, u64 a, u32 k, const SpfTable& spf) {
  require(q >= 1 && q < x, "cct_count: requires 1 <= q < x");
  u64 a_mod = q == 1 ? 0 : a % q;
  if (std::gcd(a_mod, q) != 1)
    throw std::domain_error("cct_count: requires gcd(a, q) = 1, got a = " +
                            std::to_string(a) + ", q = " + std::to_string(q));
  require_spf(spf, x, "cct_count");

  RatioReport r;
  r.lemma_id = "cct";
  r.params = {{"x", double(x)}, {"q", double(q)}, {"a", double(a)}, {"k", double(k)}};
  r.direction = Direction::upper;

  u64 count = 0;
  u64 start = q == 1 ? 1 : a_mod;
  for (u64 n = start; n <= x; n += q)
    if (chain_stats(n, 1, spf).omega <= k) ++count;
  r.lhs = double(count);

  double arg = 10.0 * double(x) / double(q);
  double ll = loglog(arg);
  KahanSum sum;
  double term = 1.0;
  for (u32 j = 0; j + 1 <= k; ++j) {  // j = 0 .. k-1
    sum.add(term);
    term *= ll / double(j + 1);
  }
  double phi_q = q == 1 ? 1.0 : chain_stats(q, 1, spf).phi;
  r.rhs = double(x) / (phi_q * std::log(arg)) * sum.value();
  if (k == 0) r.note = "bound sum is empty at k = 0";
  finish_ratio(r);
  return r;
}

RatioReport tail_counts(u64 x, u64 z, double lambda_dev, bool star,
                        const SpfTable& spf) {
  require(x >= z && z >= 3, "tail_counts: requires x >= z >= 3");
  require_spf(spf, x, "tail_counts");

  RatioReport r;
  r.lemma_id = "tails";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"lambda", lambda_dev},
              {"star", star ? 1.0 : 0.0}};
  r.direction = Direction::upper;
  r.applicable = lambda_dev > 0 && lambda_dev <= 0.95;
  if (!r.applicable) r.note = "lambda outside (0, 1 - delta]";
  if (star)
    r.note += std::string(r.note.empty() ? "" : "; ") +
              "odd-prime variant: lambda range read as (0, 1 - delta] to match "
              "the all-primes variant";
  if (z < 20)
    r.note += std::string(r.note.empty() ? "" : "; ") +
              "z below the nominal large-z threshold";

  double llz = loglog(double(z));
  double threshold = (1.0 + lambda_dev) * llz;
  u64 count = threshold <= 0 ? 1 : 0;  // n = 1 when the threshold is degenerate
  for (u64 n = 2; n <= x; ++n) {
    ChainStats s = chain_stats(n, z, spf);
    if (double(star ? s.big_star_z : s.big_z) >= threshold) ++count;
  }
  r.lhs = double(count);
  r.rhs = double(x) / (std::pow(std::log(double(z)), poisson_Q(1.0 + lambda_dev)) *
                       std::max(1.0, lambda_dev * std::sqrt(llz)));
  finish_ratio(r);
  return r;
}

RatioReport sumphi_tail(u64 z, double lambda_dev, const SpfTable& spf,
                        const TruncationOptions& trunc) {
  require(z >= 3, "sumphi_tail: requires z >= 3");
  require(lambda_dev >= 0, "sumphi_tail: requires lambda >= 0");
  require_spf(spf, z, "sumphi_tail");

  RatioReport r;
  r.lemma_id = "sumphi";
  r.params = {{"z", double(z)}, {"lambda", lambda_dev}, {"n_max", double(trunc.n_max)}};
  r.direction = Direction::upper;
  r.applicable = lambda_dev <= 0.7;
  if (!r.applicable) r.note = "lambda above 0.7";
  if (z < 20)
    r.note += std::string(r.note.empty() ? "" : "; ") +
              "z below the nominal large-z threshold";

  double llz = loglog(double(z));
  double threshold = (1.0 + lambda_dev) * llz;
  auto primes = prime_list(z);
  KahanSum lhs;
  for_each_smooth(trunc.n_max, primes, [&](u64, u32 big, double phi) {
    if (double(big) > threshold) lhs.add(1.0 / phi);
  });
  r.lhs = lhs.value();
  r.rhs = std::pow(std::log(double(z)), 1.0 - poisson_Q(1.0 + lambda_dev)) /
          std::max(1.0, lambda_dev * std::sqrt(llz));
  finish_ratio(r);
  // weight 1/phi(m) = m^{-1} (m/phi(m)); constraint Omega(m) > threshold.
  set_tail(r, rankin_tail(trunc.n_max, primes, z, 0.0, 1.0, threshold, true));
  return r;
}

RatioReport smooth_ratio(u64 x, u64 y, const SpfTable& spf) {
  require(x >= y && y >= 2, "smooth_ratio: requires x >= y >= 2");
  require_spf(spf, x, "smooth_ratio");

  RatioReport r;
  r.lemma_id = "smooth";
  r.params = {{"x", double(x)}, {"y", double(y)}};
  r.direction = Direction::upper;
  r.lhs = double(count_smooth(x, y, spf));
  r.rhs = double(x) * std::exp(-0.5 * std::log(double(x)) / std::log(double(y)));
  finish_ratio(r);
  return r;
}

RatioReport rough_ratio(u64 x, u64 z, const SpfTable& spf) {
  require(x >= z && z >= 2, "rough_ratio: requires x >= z >= 2");
  require_spf(spf, x, "rough_ratio");

  RatioReport r;
  r.lemma_id = "rough";
  r.params = {{"x", double(x)}, {"z", double(z)}};
  r.direction = x >= 2 * z ? Direction::two_sided : Direction::upper;
  if (r.direction == Direction::upper) r.note = "x < 2z: upper bound only";
  r.lhs = double(count_rough(x, z, spf));
  r.rhs = double(x) / std::log(double(z));
  finish_ratio(r);
  return r;
}

RatioReport primecor_count(u64 x, u64 z, u64 B, std::optional<u64> C,
                           const SpfTable& spf) {
  require(B > 0 && B % 2 == 0, "primecor_count: B must be even and positive");
  if (C) {
    require(*C > 0 && *C % 2 == 0, "primecor_count: C must be even and positive");
    require(*C != B, "primecor_count: B and C must be distinct");
  }
  require(x > 2 * z && z >= 2, "primecor_count: requires x > 2z >= 4");
  require_spf(spf, x, "primecor_count");

  RatioReport r;
  r.lemma_id = C ? "primecor_pair" : "primecor_single";
  r.params = {{"x", double(x)}, {"z", double(z)}, {"B", double(B)}};
  if (C) r.params.push_back({"C", double(*C)});
  r.direction = Direction::upper;

  u64 big = std::max(B, C.value_or(0));
  PrimeFlags flags = PrimeFlags::build(big * x + 1);
  u64 count = 0;
  for (u64 h = 1; h <= x; ++h) {
    if (h > 1 && spf.spf(h) < z) continue;  // P-(h) >= z
    if (!flags.is_prime(B * h + 1)) continue;
    if (C && !flags.is_prime(*C * h + 1)) continue;
    ++count;
  }
  r.lhs = double(count);

  double lx = std::log(double(x)), lz = std::log(double(z));
  if (!C) {
    double ratio_B = double(B) / chain_stats(B, 1, spf).phi;
    r.rhs = double(x) / (lz * lx) * ratio_B;
  } else {
    auto distinct_over_phi = [&](u64 v) {
      double prod = 1.0;
      while (v > 1) {
        u64 p = spf.spf(v);
        prod *= double(p) / (p - 1.0);
        while (v % p == 0) v /= p;
      }
      return prod;
    };
    u64 diff = B > *C ? B - *C : *C - B;
    r.rhs = double(x) / (lz * lx * lx) * distinct_over_phi(B * *C * diff) *
            distinct_over_phi(std::gcd(B, *C));
  }
  finish_ratio(r);
  return r;
}

RatioReport bigsum_S(u64 z, u64 Y, u32 w, double xi, const BigsumOptions& opt) {
  require(z >= 21, "bigsum_S: requires z >= e^3");
  require(Y >= 2 && Y <= z, "bigsum_S: requires 2 <= Y <= z");
  require(w >= 1, "bigsum_S: requires w >= 1");
  if (z > opt.z_cap)
    throw ResourceError("bigsum_S: z = " + std::to_string(z) +
                        " exceeds the enumeration cap z_cap = " +
                        std::to_string(opt.z_cap));

  double llz = loglog(double(z));
  RatioReport r;
  double y_cut = std::exp(std::pow(std::log(double(z)), 0.99));
  bool high_Y = double(Y) >= y_cut;
  r.lemma_id = high_Y ? "bigsum_ii" : "bigsum_i";
  r.params = {{"z", double(z)}, {"Y", double(Y)}, {"w", double(w)},
              {"xi", xi}, {"d_cap", double(opt.d_cap)}};
  r.direction = Direction::upper;
  double xi_max = 1.0 / (10.0 * std::log(double(Y)));
  r.applicable = double(w) <= 1.5 * llz && xi >= 0 && xi <= xi_max;
  if (!r.applicable) r.note = "w or xi outside the stated ranges";

  SpfTable spf = SpfTable::build(std::max(z, opt.d_cap));

  // Omega and phi for everything up to z.
  std::vector<u32> om(z + 1, 0);
  std::vector<double> phi(z + 1, 1.0);
  for (u64 n = 2; n <= z; ++n) {
    ChainStats s = chain_stats(n, 1, spf);
    om[n] = s.big;
    phi[n] = s.phi;
  }

  // D[j] = sum over d <= d_cap, P+(d) <= Y, Omega(d) = j of d^{xi-1}(d/phi(d))^2.
  std::vector<double> D(w + 1, 0.0);
  auto primes_Y = prime_list(Y);
  for_each_smooth(opt.d_cap, primes_Y, [&](u64 d, u32 big, double ph) {
    if (big <= w)
      D[big] += std::pow(double(d), xi - 1.0) * (double(d) / ph) * (double(d) / ph);
  });

  // A[i] = sum over a <= z, Omega(a) = i of 1/a.
  std::vector<double> A(w + 1, 0.0);
  for (u64 a = 1; a <= z; ++a)
    if (om[a] <= w) A[om[a]] += 1.0 / double(a);

  // G[j] = sum over (a, d) with Omega(a) + Omega(d) <= j of their weights.
  std::vector<double> G(w + 1, 0.0);
  for (u32 i = 0; i <= w; ++i)
    for (u32 j = 0; i + j <= w; ++j) G[i + j] += A[i] * D[j];
  for (u32 j = 1; j <= w; ++j) G[j] += G[j - 1];
  // prefix over exact (i + j) classes: G[j] now holds sum over Omega(ad) <= j.

  std::vector<double> A_prefix(w + 1, 0.0);
  A_prefix[0] = A[0];
  for (u32 j = 1; j <= w; ++j) A_prefix[j] = A_prefix[j - 1] + A[j];

  KahanSum S;
  KahanSum abc_mass;  // same sum with the d-factor removed, for the tail bound
  for (u64 c = 1; c < z; ++c) {
    if (om[c] >= w) continue;  // b adds at least one prime
    for (u64 b = c + 1; b <= z; ++b) {
      u32 o = om[b] + om[c];
      if (o > w) continue;
      u64 diff = b - c;
      double weight = (1.0 / phi[b]) * (1.0 / phi[c]) * (double(diff) / phi[diff]);
      S.add(weight * G[w - o]);
      abc_mass.add(weight * A_prefix[w - o]);
    }
  }
  r.lhs = S.value();
  r.rhs = high_Y ? std::pow(4.0 * llz, double(w)) / factorial(w)
                 : std::pow(std::log(double(z)), 5.0);
  finish_ratio(r);

  double d_tail = 0.0;
  if (std::pow(double(Y), double(w)) > double(opt.d_cap)) {
    // Rankin bound on the d-mass beyond d_cap: weight d^{xi-1} (d/phi(d))^2.
    // No multiplicity constraint survives here, so the prime weight must not
    // dip below 1 (v0 >= 1 keeps the bound one-sided).
    d_tail = rankin_tail(opt.d_cap, primes_Y, Y, xi, 2.0, 0.0, true);
  }
  set_tail(r, d_tail * abc_mass.value());
  if (d_tail == 0.0) r.tail_ok = true;  // truncation exact: every admissible d <= Y^w
  return r;
}

RatioReport poisson_sandwich(double v, double lambda_dev, TailSide side) {
  PoissonTail t = poisson_partial(v, lambda_dev, side);
  RatioReport r;
  r.lemma_id = "poisson";
  r.params = {{"v", v}, {"lambda", lambda_dev},
              {"side_upper", side == TailSide::upper_tail ? 1.0 : 0.0}};
  r.direction = Direction::two_sided;
  r.applicable = t.bound_applicable;
  if (!r.applicable) r.note = "lambda outside [v^{-1/2}, 1/2]";
  r.lhs = t.exact_sum;
  r.rhs = t.bound;
  finish_ratio(r);
  return r;
}

}  // namespace spd
