#pragma once

#include <cstdint>
#include <string>

#include "spd/lemmas.hpp"
#include "spd/shifted.hpp"

namespace spd {

// One (x, y) evaluation: exact count, first-moment bounds and the predicted
// order of magnitude, ready for CSV emission.
struct SweepRow {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  double z = 0;           // x / y
  double alpha = 0;       // NaN when log(x/y) < 1
  double theta = 0;       // NaN when alpha is
  std::string branch;     // "-" when no prediction applies
  std::uint64_t N_exact = 0;
  std::uint64_t mertens_upper = 0;
  std::uint64_t M1 = 0;
  double lower_cs = 0;
  double predicted_order = 0;              // NaN when no prediction applies
  double ratio_exact_over_predicted = 0;   // NaN when no prediction applies
};

SweepRow build_sweep_row(std::uint64_t x, std::uint64_t y,
                         const ExactNOptions& opt = {});

std::string sweep_csv_header();
std::string to_csv_line(const SweepRow& row);

std::string lemma_csv_header();
std::string to_csv_line(const RatioReport& report);

}  // namespace spd
