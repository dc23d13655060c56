#include "spd/registry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spd/asym.hpp"
#include "spd/sieve.hpp"

namespace spd {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

void fnv_bytes(u64& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void fnv_string(u64& h, const std::string& s) { fnv_bytes(h, s.data(), s.size()); }

}  // namespace

const std::vector<std::string>& registry_ids() {
  static const std::vector<std::string> ids = {
      "selberg",        "halasz_count",  "halasz_recip", "hall_lower",
      "timofeev_upper", "timofeev_lower", "recip",        "cct",
      "poisson",        "tails",         "sumphi",       "smooth",
      "rough",          "primecor_single", "primecor_pair", "bigsum_i",
      "bigsum_ii"};
  return ids;
}

RegistryRun run_registry(const RegistryOptions& opt) {
  SpfTable spf = SpfTable::build(opt.spf_limit);
  TruncationOptions trunc{std::min<u64>(10'000'000, opt.spf_limit)};

  RegistryRun run;
  auto add = [&](RatioReport r) { run.reports.push_back(std::move(r)); };

  const std::vector<std::pair<u64, u64>> xz = {
      {100'000, 100}, {1'000'000, 100}, {1'000'000, 1'000}};

  for (u64 x : {u64(10'000), u64(1'000'000)})
    for (u32 k = 0; k <= 4; ++k) add(selberg_ratio(x, k, spf));

  for (auto [x, z] : xz)
    for (u32 m = 0; m <= 2; ++m)
      for (bool star : {false, true})
        add(halasz_counts(x, z, m, star, HalaszMode::count, spf));
  for (auto [x, z] : xz)
    for (u32 m = 0; m <= 2; ++m)
      for (bool star : {false, true})
        add(halasz_counts(x, z, m, star, HalaszMode::recip_sum, spf));

  for (auto [x, z] : xz)
    for (u32 m : {1u, 2u}) add(hall_pair_lower(x, z, m, spf));

  for (auto [x, z] : xz)
    for (u32 m = 0; m <= 2; ++m)
      for (bool star : {false, true}) add(timofeev_counts(x, z, m, star, spf));
  for (auto [x, z] : xz)
    for (u32 m : {1u, 2u}) add(timofeev_triple_lower(x, z, m, spf));

  const std::vector<std::pair<u64, u64>> recip_xz = {
      {10'000, 100}, {1'000'000, 100}, {1'000'000, 1'000}};
  for (auto [x, z] : recip_xz)
    for (u32 k = 0; k <= 2; ++k) {
      double xi_max = 1.0 / (5.0 * std::log(double(x)));
      add(recip_weighted_sum(x, z, k, 0.0, 0.0, spf, trunc));
      add(recip_weighted_sum(x, z, k, 0.0, 2.0, spf, trunc));
      add(recip_weighted_sum(x, z, k, xi_max, 0.0, spf, trunc));
    }

  for (u64 x : {u64(100'000), u64(1'000'000)})
    for (auto [q, a] : std::vector<std::pair<u64, u64>>{{3, 1}, {101, 3}})
      for (u32 k : {1u, 2u, 3u}) add(cct_count(x, q, a, k, spf));

  for (double v : {10.0, 25.0, 100.0, 400.0}) {
    double lo = std::pow(v, -0.5);
    for (double lam : {lo, 0.5 * (lo + 0.5), 0.5})
      for (TailSide side : {TailSide::lower_tail, TailSide::upper_tail})
        add(poisson_sandwich(v, lam, side));
  }

  for (auto [x, z] : xz)
    for (double lam : {0.3, 0.6, 0.9})
      for (bool star : {false, true}) add(tail_counts(x, z, lam, star, spf));

  for (u64 z : {u64(100), u64(1'000)})
    for (double lam : {0.0, 0.3, 0.6}) add(sumphi_tail(z, lam, spf, trunc));

  for (u64 x : {u64(10'000), u64(100'000), u64(1'000'000)})
    for (double e : {0.5, 0.25, 0.125}) {
      u64 y = std::max<u64>(2, u64(std::llround(std::pow(double(x), e))));
      add(smooth_ratio(x, y, spf));
    }

  for (u64 x : {u64(10'000), u64(1'000'000)})
    for (u64 z : {u64(3), u64(10), u64(100)}) add(rough_ratio(x, z, spf));

  for (auto [x, z] : std::vector<std::pair<u64, u64>>{
           {10'000, 3}, {10'000, 10}, {100'000, 3}, {100'000, 10}})
    for (u64 B : {u64(2), u64(6)}) add(primecor_count(x, z, B, std::nullopt, spf));
  add(primecor_count(1'000'000, 10, 2, std::nullopt, spf));

  for (u64 x : {u64(10'000), u64(100'000)})
    for (u64 z : {u64(3), u64(10)})
      for (auto [B, C] : std::vector<std::pair<u64, u64>>{{2, 4}, {2, 6}})
        add(primecor_count(x, z, B, C, spf));

  for (u64 z : {u64(60), u64(150)})
    for (u64 Y : {u64(3), u64(7)}) {
      add(bigsum_S(z, Y, 2, 0.0));
      add(bigsum_S(z, Y, 2, 1.0 / (10.0 * std::log(double(Y)))));
    }
  for (u64 z : {u64(100), u64(200)}) add(bigsum_S(z, z, 2, 0.0));

  u64 h = 14695981039346656037ULL;
  for (const auto& r : run.reports) {
    fnv_string(h, r.lemma_id);
    for (const auto& [k, v] : r.params) {
      fnv_string(h, k);
      fnv_string(h, double_repr(v));
    }
  }
  run.grid_hash = h;
  return run;
}

BandTable RegistryRun::freeze() const {
  BandTable t;
  t.grid_hash = grid_hash;
  for (const auto& r : reports) {
    auto [it, fresh] = t.bands.emplace(r.lemma_id, BandEntry{r.ratio, r.ratio});
    if (!fresh) {
      it->second.lo = std::min(it->second.lo, r.ratio);
      it->second.hi = std::max(it->second.hi, r.ratio);
    }
  }
  return t;
}

std::vector<std::string> RegistryRun::check(const BandTable& table) const {
  std::vector<std::string> out;
  if (table.version != 1)
    out.push_back("band table version " + std::to_string(table.version) +
                  " is not supported");
  if (table.grid_hash != grid_hash) {
    out.push_back("grid hash mismatch: bands were frozen on a different "
                  "parameter grid; refreeze with --freeze");
    return out;
  }
  std::map<std::string, int> seen;
  for (const auto& r : reports) {
    auto it = table.bands.find(r.lemma_id);
    if (it == table.bands.end()) {
      if (++seen[r.lemma_id] == 1)
        out.push_back("no frozen band for id " + r.lemma_id);
      continue;
    }
    ++seen[r.lemma_id];
    const BandEntry& b = it->second;
    bool bad_hi = r.ratio > b.hi &&
                  (r.direction == Direction::upper || r.direction == Direction::two_sided);
    bool bad_lo = r.ratio < b.lo &&
                  (r.direction == Direction::lower || r.direction == Direction::two_sided);
    if (bad_hi || bad_lo) {
      std::string params;
      for (const auto& [k, v] : r.params)
        params += (params.empty() ? "" : ";") + k + "=" + double_repr(v);
      out.push_back(r.lemma_id + " [" + params + "]: ratio " + double_repr(r.ratio) +
                    " outside band [" + double_repr(b.lo) + ", " + double_repr(b.hi) +
                    "]");
    }
  }
  for (const auto& [id, e] : table.bands)
    if (!seen.count(id)) out.push_back("band id " + id + " produced no reports");
  return out;
}

}  // namespace spd
