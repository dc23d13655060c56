#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spd/bands.hpp"
#include "spd/lemmas.hpp"

namespace spd {

// Canonical ids of every verified inequality, in report order.
const std::vector<std::string>& registry_ids();

struct RegistryOptions {
  std::uint64_t spf_limit = 10'000'000;  // shared factor table; also caps recip truncation
};

// One full evaluation of the standard parameter grid.
struct RegistryRun {
  std::vector<RatioReport> reports;
  std::uint64_t grid_hash = 0;  // FNV-1a over every (id, params) pair, in order

  // Collapses the run into per-id [min, max] ratio bands.
  BandTable freeze() const;

  // Compares the run against frozen bands.  Returns one message per
  // violation; empty means the run is inside every band.  Upper bounds must
  // keep ratio <= hi, lower bounds ratio >= lo, two-sided both.
  std::vector<std::string> check(const BandTable& table) const;
};

RegistryRun run_registry(const RegistryOptions& opt = {});

}  // namespace spd
