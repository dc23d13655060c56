#include "spd/asym.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace spd {
namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kAlphaCrit = 1.0 / (2 * kLog2);  // 1/log 4

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Applicability of the three ranges; they genuinely overlap, so selection
// prefers ii, then iii, then i.
struct BranchFlags {
  bool i = false, ii = false, iii = false;
};

BranchFlags branch_flags(double x, double y, bool alpha_defined, double alpha) {
  BranchFlags f;
  double llx = std::log(std::log(x));
  f.ii = alpha_defined && alpha >= kAlphaCrit && alpha <= 1.0 - kLog2 / llx;
  f.iii = !alpha_defined || alpha < kAlphaCrit;
  f.i = y <= std::pow(x, 0.95) && !f.ii;
  return f;
}

Branch select_branch(const BranchFlags& f) {
  if (f.ii) return Branch::ii;
  if (f.iii) return Branch::iii;
  return Branch::i;
}

// Sum of e^{-v} v^k/k! for k in [k_hi, k_lo] walking downward; the first term
// is computed in log space and successive terms use t_{k-1} = t_k * k / v.
double sum_descending(double v, long long k_hi, long long k_lo = 0) {
  if (k_hi < k_lo) return 0.0;
  double t = std::exp(-v + double(k_hi) * std::log(v) - std::lgamma(double(k_hi) + 1));
  double sum = 0.0, comp = 0.0;
  for (long long k = k_hi; k >= k_lo; --k) {
    double yv = t - comp;
    double s = sum + yv;
    comp = (s - sum) - yv;
    sum = s;
    if (t < sum * 1e-18 && double(k) < v) break;
    t *= double(k) / v;
  }
  return sum;
}

// Sum of e^{-v} v^k/k! for k >= k_lo, ascending with t_{k+1} = t_k * v/(k+1).
double sum_ascending(double v, long long k_lo) {
  if (k_lo < 0) k_lo = 0;
  double t = std::exp(-v + double(k_lo) * std::log(v) - std::lgamma(double(k_lo) + 1));
  double sum = 0.0, comp = 0.0;
  for (long long k = k_lo;; ++k) {
    double yv = t - comp;
    double s = sum + yv;
    comp = (s - sum) - yv;
    sum = s;
    if (t < sum * 1e-18 && double(k) > v) break;
    t *= v / (double(k) + 1);
  }
  return sum;
}

}  // namespace

double delta_const() { return 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0); }

double poisson_Q(double t) {
  if (!(t > 0))
    throw std::domain_error("poisson_Q: requires t > 0, got " + std::to_string(t));
  return t * std::log(t) - t + 1.0;
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::i: return "i";
    case Branch::ii: return "ii";
    default: return "iii";
  }
}

ShapeParams shape_params(double x, double y, ZConvention convention) {
  constexpr double kE = 2.718281828459045;
  if (!(x > kE))
    throw std::domain_error("shape_params: requires x > e, got x = " + std::to_string(x));
  if (!(y >= 1))
    throw std::domain_error("shape_params: requires y >= 1, got y = " + std::to_string(y));
  if (y > x)
    throw std::domain_error("shape_params: requires y <= x, got y = " + std::to_string(y) +
                            " > x = " + std::to_string(x));

  ShapeParams sp;
  sp.x = x;
  sp.y = y;
  sp.convention = convention;
  sp.z = convention == ZConvention::cofactor ? x / y : std::min(y, x / y);

  double lr = std::log(x) - std::log(y);  // log(x/y)
  sp.alpha_defined = lr >= 1.0;
  if (sp.alpha_defined) {
    sp.alpha = std::log(lr) / std::log(std::log(x));
    sp.theta = (sp.alpha - kAlphaCrit) * std::sqrt(std::log(std::log(x)));
  } else {
    sp.alpha = quiet_nan();
    sp.theta = quiet_nan();
  }

  if (sp.alpha_defined && sp.alpha > 0) {
    double g = 1.0 / (sp.alpha * 2 * kLog2);
    sp.gamma = convention == ZConvention::balanced ? std::min(1.0, g) : g;
    double llz = std::log(std::log(sp.z));  // z > 1 needed; guard below
    if (sp.z > 1 && std::log(sp.z) > 0) {
      double base = std::floor(sp.gamma * llz);
      sp.w = static_cast<int>(convention == ZConvention::balanced ? 2 * base : base);
    } else {
      sp.w = 0;
    }
  } else {
    sp.gamma = quiet_nan();
    sp.w = 0;
  }

  sp.branch = select_branch(branch_flags(x, y, sp.alpha_defined, sp.alpha));
  return sp;
}

double branch_i_value(double x, double y) {
  double ye = std::max(y, 3.0);
  double ly = std::log(ye);
  return x / (std::pow(ly, delta_const()) * std::sqrt(std::log(ly)));
}

double branch_ii_value(double x, double alpha, double theta) {
  double expo = delta_const() + alpha - 1.0 - std::log(alpha) / kLog2;
  return x / (std::max(1.0, theta) * std::pow(std::log(x), expo));
}

double branch_iii_value(double x, double y) {
  return x * (std::log(x) - std::log(y)) / std::log(x);
}

OrderPrediction predict_order(double x, double y) {
  if (!(x >= 10))
    throw std::domain_error("predict_order: requires x >= 10, got x = " +
                            std::to_string(x));
  if (!(y >= 2 && y <= x / 2))
    throw std::domain_error("predict_order: requires 2 <= y <= x/2, got y = " +
                            std::to_string(y));

  ShapeParams sp = shape_params(x, y, ZConvention::cofactor);
  BranchFlags f = branch_flags(x, y, sp.alpha_defined, sp.alpha);

  OrderPrediction op;
  op.branch = select_branch(f);
  op.asymptotic_value = branch_iii_value(x, y);
  if (f.ii) op.applicable.push_back({Branch::ii, branch_ii_value(x, sp.alpha, sp.theta)});
  if (f.iii) op.applicable.push_back({Branch::iii, branch_iii_value(x, y)});
  if (f.i) op.applicable.push_back({Branch::i, branch_i_value(x, y)});

  switch (op.branch) {
    case Branch::i: {
      op.clamped_small_y = y < 3;
      double ye = std::max(y, 3.0);
      op.value = branch_i_value(x, y);
      op.terms = {{"log_y_pow_delta", std::pow(std::log(ye), delta_const())},
                  {"sqrt_loglog_y", std::sqrt(std::log(std::log(ye)))}};
      break;
    }
    case Branch::ii: {
      double expo = delta_const() + sp.alpha - 1.0 - std::log(sp.alpha) / kLog2;
      op.value = branch_ii_value(x, sp.alpha, sp.theta);
      op.terms = {{"max_1_theta", std::max(1.0, sp.theta)},
                  {"exponent", expo},
                  {"log_x_pow_exponent", std::pow(std::log(x), expo)}};
      break;
    }
    case Branch::iii: {
      op.value = branch_iii_value(x, y);
      op.terms = {{"log_ratio", std::log(x) - std::log(y)}, {"log_x", std::log(x)}};
      break;
    }
  }
  return op;
}

PoissonTail poisson_partial(double v, double lambda_dev, TailSide side) {
  if (!(v > 0))
    throw std::domain_error("poisson_partial: requires v > 0, got " + std::to_string(v));

  PoissonTail out;
  double lam = lambda_dev;
  if (side == TailSide::lower_tail) {
    long long k_hi = static_cast<long long>(std::floor((1.0 - lam) * v));
    if (k_hi < 0) {
      out.exact_sum = 0.0;
    } else if (double(k_hi) >= v) {
      // Threshold at or above the mode: complement of the upper remainder.
      out.exact_sum = 1.0 - sum_ascending(v, k_hi + 1);
    } else {
      out.exact_sum = sum_descending(v, k_hi);
    }
    out.bound = (lam > 0 && lam < 1)
                    ? std::exp(-v * poisson_Q(1.0 - lam)) / (lam * std::sqrt(v))
                    : quiet_nan();
  } else {
    long long k_lo = static_cast<long long>(std::ceil((1.0 + lam) * v));
    if (k_lo <= 0) {
      out.exact_sum = 1.0;
    } else if (double(k_lo) <= v) {
      out.exact_sum = 1.0 - sum_descending(v, k_lo - 1);
    } else {
      out.exact_sum = sum_ascending(v, k_lo);
    }
    out.bound = lam > 0
                    ? std::exp(-v * poisson_Q(1.0 + lam)) / (lam * std::sqrt(v))
                    : quiet_nan();
  }
  out.bound_applicable = lam >= std::pow(v, -0.5) && lam <= 0.5;
  return out;
}

}  // namespace spd
