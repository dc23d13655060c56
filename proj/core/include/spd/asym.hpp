#pragma once

// Parameter algebra for the order-of-magnitude predictor: the constant delta,
// the rate function Q, the shape parameters (alpha, theta, gamma, w) of a pair
// (x, y), branch selection, and exact Poisson tail sums.

#include <string>
#include <vector>

namespace spd {

// 1 - (1 + log log 2)/log 2 = 0.08607133205593421...
double delta_const();

// Q(t) = t log t - t + 1 for t > 0; throws std::domain_error otherwise.
double poisson_Q(double t);

// Two parameterizations are used by the bounds: the cofactor convention takes
// z = x/y with gamma = 1/(alpha log 4) and w = floor(gamma log log z); the
// balanced convention takes z = min(y, x/y) with gamma capped at 1 and
// w = 2 floor(gamma log log z).
enum class ZConvention { cofactor, balanced };

enum class Branch { i, ii, iii };
const char* to_string(Branch b);

struct ShapeParams {
  double x = 0;
  double y = 0;
  double z = 0;
  bool alpha_defined = false;  // requires log(x/y) >= 1, i.e. y <= x/e
  double alpha = 0;            // log log(x/y) / log log x
  double theta = 0;            // (alpha - 1/log 4) sqrt(log log x)
  double gamma = 0;            // per convention; NaN when alpha unusable
  int w = 0;                   // per convention; raw floor, may be <= 0 at tiny scale
  Branch branch = Branch::iii;
  ZConvention convention = ZConvention::cofactor;
};

// Throws std::domain_error for x <= e, y < 1 or y > x.
ShapeParams shape_params(double x, double y, ZConvention convention);

// The three order formulas, implied constants set to 1.
// branch_i_value clamps y to >= 3 (the formula needs log log y > 0).
double branch_i_value(double x, double y);
double branch_ii_value(double x, double alpha, double theta);
double branch_iii_value(double x, double y);

struct BranchValue {
  Branch branch;
  double value;
};

struct OrderPrediction {
  Branch branch = Branch::iii;         // selected: prefer ii, then iii, then i
  double value = 0;                    // selected branch formula
  std::vector<BranchValue> applicable; // every branch whose range covers (x, y)
  std::vector<std::pair<std::string, double>> terms;  // named sub-factors
  bool clamped_small_y = false;        // branch i evaluated with y raised to 3
  // The x log(x/y)/log x form is both branch iii's order and, in part of that
  // range, an asymptotic equality; it is reported alongside whichever branch
  // is selected so callers can compare against either reading.
  double asymptotic_value = 0;
};

// Throws std::domain_error unless x >= 10 and 2 <= y <= x/2, naming the
// violated range.
OrderPrediction predict_order(double x, double y);

enum class TailSide { lower_tail, upper_tail };

struct PoissonTail {
  double exact_sum = 0;  // sum of e^{-v} v^k/k! over the tail
  double bound = 0;      // e^{-v Q(1 -/+ lambda)} / (lambda sqrt(v))
  bool bound_applicable = false;  // v^{-1/2} <= lambda <= 1/2
};

// lower_tail: k <= (1-lambda)v.  upper_tail: k >= (1+lambda)v.
// exact_sum is computed for any lambda_dev (thresholds outside [0, v]
// saturate toward 0 or 1); the bound is only meaningful in the stated
// lambda window and is flagged otherwise.  Throws std::domain_error for
// v <= 0.
PoissonTail poisson_partial(double v, double lambda_dev, TailSide side);

}  // namespace spd
