#pragma once

// Both sides of every bound in the verification registry, reported as ratios.
// Left sides are exact scans (or exactly truncated sums with rigorous tail
// bounds); right sides are the bound expressions with implied constant 1.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spd/asym.hpp"
#include "spd/factor.hpp"

namespace spd {

enum class Direction { upper, lower, two_sided };
const char* to_string(Direction d);

struct RatioReport {
  std::string lemma_id;
  std::vector<std::pair<std::string, double>> params;  // insertion-ordered
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;  // lhs / rhs
  Direction direction = Direction::upper;
  bool applicable = true;  // stated parameter ranges hold
  double tail_bound = 0;   // rigorous bound on truncated mass; 0 when exact
  bool tail_ok = true;     // tail_bound < 1% of lhs (true when nothing truncated)
  std::string note;
};

struct TruncationOptions {
  std::uint64_t n_max = 10'000'000;  // requires spf.limit() >= n_max
};

// --- reciprocal-sum / counting bounds over Omega(., z) classes ---------------

// sum of 1/n over n <= x with Omega(n) = k, against (log log x)^k / k!.
RatioReport selberg_ratio(std::uint64_t x, std::uint32_t k, const SpfTable& spf);

enum class HalaszMode { count, recip_sum };

// #{n <= x : Omega(n,z) = m} against x (log log z)^m / (m! log z), or the
// reciprocal sum against (log x/log z)(log log z)^m/m!.  star switches to the
// odd-prime count Omega*(n,z) (admissible m range widens from 1.9 to 2.9
// times log log z).
RatioReport halasz_counts(std::uint64_t x, std::uint64_t z, std::uint32_t m,
                          bool star, HalaszMode mode, const SpfTable& spf);

// Lower bound companion: #{n <= x : Omega(n,z) in {m, m+1}} against the same
// right side as the count form above.
RatioReport hall_pair_lower(std::uint64_t x, std::uint64_t z, std::uint32_t m,
                            const SpfTable& spf);

// #{p <= x prime : Omega(p-1,z) = m} against x(log log z)^m/(m! log x log z).
RatioReport timofeev_counts(std::uint64_t x, std::uint64_t z, std::uint32_t m,
                            bool star, const SpfTable& spf);

// Lower companion over the triple {m, m+1, m+2}.
RatioReport timofeev_triple_lower(std::uint64_t x, std::uint64_t z,
                                  std::uint32_t m, const SpfTable& spf);

// sum over n with P+(n) <= x, Omega(n,z) = k of n^{-(1-xi)} (n/phi(n))^c,
// truncated at n_max with a Rankin tail bound, against
// (log x/log z)(log log z)^k/k!.
RatioReport recip_weighted_sum(std::uint64_t x, std::uint64_t z, std::uint32_t k,
                               double xi, double c, const SpfTable& spf,
                               const TruncationOptions& trunc = {});

// #{n <= x : n = a (mod q), omega(n) <= k} against
// x/(phi(q) log(10x/q)) * sum_{j<k} (log log(10x/q))^j/j!.
// Throws std::domain_error when gcd(a, q) > 1.
RatioReport cct_count(std::uint64_t x, std::uint64_t q, std::uint64_t a,
                      std::uint32_t k, const SpfTable& spf);

// #{m <= x : Omega(m,z) >= (1+lambda) log log z} against
// x / ((log z)^{Q(1+lambda)} max(1, lambda sqrt(log log z))).
RatioReport tail_counts(std::uint64_t x, std::uint64_t z, double lambda_dev,
                        bool star, const SpfTable& spf);

// sum of 1/phi(m) over z-smooth m with Omega(m) > (1+lambda) log log z,
// truncated at n_max, against (log z)^{1-Q(1+lambda)}/max(1, lambda sqrt(log log z)).
RatioReport sumphi_tail(std::uint64_t z, double lambda_dev, const SpfTable& spf,
                        const TruncationOptions& trunc = {});

// --- sieve-flavoured counts --------------------------------------------------

// count_smooth(x,y) against x e^{-0.5 log x / log y}.
RatioReport smooth_ratio(std::uint64_t x, std::uint64_t y, const SpfTable& spf);

// count_rough(x,z) against x/log z; two-sided for x >= 2z, upper otherwise.
RatioReport rough_ratio(std::uint64_t x, std::uint64_t z, const SpfTable& spf);

// #{h <= x : P-(h) >= z, Bh+1 prime (and Ch+1 prime)} against
// x B/(phi(B) log z log x), or for the pair version
// x/(log z log^2 x) * prod_{p | BC|B-C|} p/(p-1) * prod_{p | gcd(B,C)} p/(p-1).
// B (and C) must be even, positive, and distinct; x > 2z >= 4.
RatioReport primecor_count(std::uint64_t x, std::uint64_t z, std::uint64_t B,
                           std::optional<std::uint64_t> C, const SpfTable& spf);

struct BigsumOptions {
  std::uint64_t z_cap = 1000;       // enumeration guard on z
  std::uint64_t d_cap = 1'000'000;  // truncation of the smooth variable d
};

// S(z,Y;w;xi) = sum over a,b,c <= z, b > c, P+(d) <= Y, Omega(abcd) <= w of
//   1/(a b c d^{1-xi}) (d/phi(d))^2 (b/phi(b)) (c/phi(c)) ((b-c)/phi(b-c)),
// d truncated at d_cap (tail exactly 0 when Y^w <= d_cap, else Rankin bound).
// Compared against (log z)^5 when Y < exp((log z)^0.99) (id bigsum_i) and
// against (4 log log z)^w / w! otherwise (id bigsum_ii).
RatioReport bigsum_S(std::uint64_t z, std::uint64_t Y, std::uint32_t w, double xi,
                     const BigsumOptions& opt = {});

// Exact Poisson tail against its bound, as a two-sided report (id "poisson").
RatioReport poisson_sandwich(double v, double lambda_dev, TailSide side);

}  // namespace spd
