#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace spd {

// Inclusive [lo, hi] range a lemma's observed lhs/rhs ratio must stay in.
struct BandEntry {
  double lo = 0;
  double hi = 0;
};

// Frozen ratio bands, persisted as a small text file so regressions in any
// verified inequality are caught exactly (values survive a save/load round
// trip bit-for-bit).
struct BandTable {
  int version = 1;
  std::uint64_t grid_hash = 0;  // fingerprint of the parameter grid the bands were frozen on
  std::map<std::string, BandEntry> bands;

  static BandTable load(const std::string& path);
  void save(const std::string& path) const;
};

// Serializes a double so that parsing the result returns the identical bits.
std::string double_repr(double v);
double parse_double(const std::string& s);

}  // namespace spd
