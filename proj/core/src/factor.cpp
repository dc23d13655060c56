#include "spd/factor.hpp"

#include <stdexcept>
#include <string>

#include "spd/errors.hpp"

namespace spd {

namespace {
constexpr std::uint64_t kInternalTableBudget = 20'000'000;

void check_scan_args(const char* who, std::uint64_t x, const SpfTable& spf) {
  if (x > spf.limit())
    throw std::invalid_argument(std::string(who) + ": x = " + std::to_string(x) +
                                " exceeds table limit " + std::to_string(spf.limit()));
}

std::uint64_t checked_internal_limit(const char* who, std::uint64_t x) {
  if (x > kInternalTableBudget)
    throw ResourceError(std::string(who) + ": x = " + std::to_string(x) +
                        " exceeds the internal table budget " +
                        std::to_string(kInternalTableBudget) +
                        "; build an SpfTable and use the table overload");
  return x;
}
}  // namespace

Factorization factorize(std::uint64_t n, const SpfTable& spf) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  std::uint64_t m = n;
  while (m > 1) {
    const std::uint64_t p = spf.spf(m);
    std::uint32_t a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    f.factors.push_back({p, a});
  }
  return f;
}

OmegaStats omega_stats(std::uint64_t n, std::uint64_t z, const SpfTable& spf) {
  OmegaStats s;
  if (n <= 1) {
    if (n == 0) throw std::invalid_argument("omega_stats: n must be positive");
    return s;  // conventions: P^+(1) = 1, P^-(1) = kNoPrimeFactor
  }
  const Factorization f = factorize(n, spf);
  s.omega = static_cast<std::uint32_t>(f.factors.size());
  s.p_minus = f.factors.front().p;
  s.p_plus = f.factors.back().p;
  for (const PrimePower& pp : f.factors) {
    s.big_omega += pp.a;
    if (pp.p <= z) {
      s.big_omega_z += pp.a;
      if (pp.p > 2) s.big_omega_star_z += pp.a;
    }
  }
  return s;
}

std::uint64_t euler_phi(std::uint64_t n, const SpfTable& spf) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  std::uint64_t r = n;
  for (const PrimePower& pp : factorize(n, spf).factors) r = r / pp.p * (pp.p - 1);
  return r;
}

std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y, const SpfTable& spf) {
  if (x == 0) return 0;
  if (y >= x) return x;  // every n <= x is trivially x-smooth
  check_scan_args("count_smooth", x, spf);
  std::uint64_t count = 1;  // n = 1
  for (std::uint64_t n = 2; n <= x; ++n) {
    std::uint64_t m = n;
    bool smooth = true;
    while (m > 1) {
      const std::uint64_t p = spf.spf(m);
      if (p > y) {
        smooth = false;
        break;
      }
      do m /= p; while (m % p == 0);
    }
    if (smooth) ++count;
  }
  return count;
}

std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y) {
  if (x == 0) return 0;
  if (y >= x) return x;
  return count_smooth(x, y, SpfTable::build(checked_internal_limit("count_smooth", x)));
}

std::uint64_t count_rough(std::uint64_t x, std::uint64_t z, const SpfTable& spf) {
  if (x == 0) return 0;
  if (z >= x) return 1;  // only n = 1 has every prime factor beyond x
  check_scan_args("count_rough", x, spf);
  std::uint64_t count = 1;  // n = 1: P^-(1) treated as infinite
  for (std::uint64_t n = 2; n <= x; ++n)
    if (spf.spf(n) > z) ++count;
  return count;
}

std::uint64_t count_rough(std::uint64_t x, std::uint64_t z) {
  if (x == 0) return 0;
  if (z >= x) return 1;
  return count_rough(x, z, SpfTable::build(checked_internal_limit("count_rough", x)));
}

}  // namespace spd
