#include "spd/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spd/asym.hpp"
#include "spd/bands.hpp"

namespace spd {
namespace {

std::string num(double v) { return std::isnan(v) ? "nan" : double_repr(v); }

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

SweepRow build_sweep_row(std::uint64_t x, std::uint64_t y, const ExactNOptions& opt) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.x = x;
  row.y = y;

  ShapeParams sp = shape_params(double(x), double(y), ZConvention::cofactor);
  row.z = sp.z;
  row.alpha = sp.alpha_defined ? sp.alpha : kNaN;
  row.theta = sp.alpha_defined ? sp.theta : kNaN;

  row.N_exact = exact_N(x, y, opt);
  row.mertens_upper = spd::mertens_upper(x, y);

  RCountOptions ropt;
  ropt.segment_bits = opt.segment_bits;
  ropt.max_x = opt.max_x;
  MomentReport m = moments(x, y, RepresentationConstraints{}, ropt);
  row.M1 = m.M1;
  row.lower_cs = m.lower_cs;

  if (x >= 10 && y >= 2 && 2 * y <= x) {
    OrderPrediction p = predict_order(double(x), double(y));
    row.branch = to_string(p.branch);
    row.predicted_order = p.value;
    row.ratio_exact_over_predicted = double(row.N_exact) / p.value;
  } else {
    row.branch = "-";
    row.predicted_order = kNaN;
    row.ratio_exact_over_predicted = kNaN;
  }
  return row;
}

std::string sweep_csv_header() {
  return "x,y,z,alpha,theta,branch,N_exact,mertens_upper,M1,lower_cs,"
         "predicted_order,ratio_exact_over_predicted";
}

std::string to_csv_line(const SweepRow& r) {
  std::string s;
  s += std::to_string(r.x);
  s += ',';
  s += std::to_string(r.y);
  s += ',';
  s += num(r.z);
  s += ',';
  s += num(r.alpha);
  s += ',';
  s += num(r.theta);
  s += ',';
  s += r.branch;
  s += ',';
  s += std::to_string(r.N_exact);
  s += ',';
  s += std::to_string(r.mertens_upper);
  s += ',';
  s += std::to_string(r.M1);
  s += ',';
  s += num(r.lower_cs);
  s += ',';
  s += num(r.predicted_order);
  s += ',';
  s += num(r.ratio_exact_over_predicted);
  return s;
}

std::string lemma_csv_header() {
  return "lemma_id,direction,lhs,rhs,ratio,applicable,tail_bound,tail_ok,params,note";
}

std::string to_csv_line(const RatioReport& r) {
  std::string params;
  for (const auto& [k, v] : r.params) {
    if (!params.empty()) params += ';';
    params += k;
    params += '=';
    params += num(v);
  }
  std::string s;
  s += r.lemma_id;
  s += ',';
  s += to_string(r.direction);
  s += ',';
  s += num(r.lhs);
  s += ',';
  s += num(r.rhs);
  s += ',';
  s += num(r.ratio);
  s += ',';
  s += r.applicable ? "1" : "0";
  s += ',';
  s += num(r.tail_bound);
  s += ',';
  s += r.tail_ok ? "1" : "0";
  s += ',';
  s += params;
  s += ',';
  s += sanitize(r.note);
  return s;
}

}  // namespace spd
