// Command line front end: exact counts (count), (x, y) grids with order
// predictions (sweep), and the bound-verification registry (lemma).
//
// Exit codes: 0 success, 1 usage, 2 resource or missing file, 3 a frozen
// ratio band was violated.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spd/asym.hpp"
#include "spd/bands.hpp"
#include "spd/errors.hpp"
#include "spd/lemmas.hpp"
#include "spd/registry.hpp"
#include "spd/report.hpp"
#include "spd/shifted.hpp"
#include "spd/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

namespace {

u64 to_u64(double v, const std::string& name) {
  if (!(v >= 0) || v > 1.8e19 || v != std::floor(v))
    throw std::domain_error(name + " must be a nonnegative integer, got " +
                            std::to_string(v));
  return static_cast<u64>(v);
}

u64 env_max_x() {
  const char* s = std::getenv("SPD_MAX_X");
  if (!s || !*s) return spd::kDefaultMaxX;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v >= 1))
    throw std::domain_error(std::string("SPD_MAX_X is not a positive number: ") + s);
  return static_cast<u64>(v);
}

std::string u128_str(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s += char('0' + int(v % 10));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw spd::ResourceError("cannot write " + path.string());
  out << body;
  if (!out.flush()) throw spd::ResourceError("failed writing " + path.string());
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::vector<std::string>& outputs, double wall_seconds) {
  json m;
  m["command"] = command;
  m["outputs"] = outputs;
  m["tool"] = "spd";
  m["version"] = spd::kVersion;
  m["wall_time_seconds"] = wall_seconds;
  write_text(dir / (command + "_manifest.json"), m.dump(2) + "\n");
}

json report_json(const spd::RatioReport& r) {
  json j;
  j["lemma_id"] = r.lemma_id;
  j["direction"] = spd::to_string(r.direction);
  json p = json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["applicable"] = r.applicable;
  j["tail_bound"] = r.tail_bound;
  j["tail_ok"] = r.tail_ok;
  j["note"] = r.note;
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// ---------------------------------------------------------------- count ----

struct CountArgs {
  double x = 0, y = 0;
  double max_x = 0;  // 0: use env/default
  unsigned threads = 1;
  std::string out_dir;
};

int run_count(const CountArgs& a) {
  Timer timer;
  u64 x = to_u64(a.x, "--x");
  u64 y = to_u64(a.y, "--y");
  if (x < 1) throw std::domain_error("--x must be >= 1");

  spd::ExactNOptions opt;
  opt.threads = a.threads;
  opt.max_x = a.max_x > 0 ? to_u64(a.max_x, "--max-x") : env_max_x();

  u64 N = spd::exact_N(x, y, opt);
  u64 mert = spd::mertens_upper(x, y);
  double nu_val = spd::nu(x, y);

  spd::RCountOptions ropt;
  ropt.max_x = opt.max_x;
  spd::MomentReport m = spd::moments(x, y, {}, ropt);

  std::cout << "x: " << x << "\n"
            << "y: " << y << "\n"
            << "N_exact: " << N << "\n"
            << "mertens_upper: " << mert << "\n"
            << "nu: " << spd::double_repr(nu_val) << "\n"
            << "M1: " << m.M1 << "\n"
            << "M2: " << m.M2 << "\n"
            << "M2_prime: " << m.M2_prime << "\n"
            << "lower_ie: " << m.lower_ie << "\n"
            << "lower_cs: " << spd::double_repr(m.lower_cs) << "\n"
            << "n_with_r_positive: " << m.n_with_r_positive << "\n";

  spd::SweepRow row;
  if (x >= 3 && y >= 1 && y <= x) {
    row = spd::build_sweep_row(x, y, opt);
  } else {
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    row = {x, y, double(x) / double(y), kNaN, kNaN, "-", N, mert, m.M1,
           m.lower_cs, kNaN, kNaN};
  }
  if (row.branch != "-")
    std::cout << "branch: " << row.branch << "\n"
              << "predicted_order: " << spd::double_repr(row.predicted_order) << "\n"
              << "ratio_exact_over_predicted: "
              << spd::double_repr(row.ratio_exact_over_predicted) << "\n";

  if (!a.out_dir.empty()) {
    fs::path dir(a.out_dir);
    fs::create_directories(dir);

    write_text(dir / "count.csv",
               spd::sweep_csv_header() + "\n" + spd::to_csv_line(row) + "\n");

    json j;
    j["x"] = x;
    j["y"] = y;
    j["N_exact"] = N;
    j["mertens_upper"] = mert;
    j["nu"] = nu_val;
    j["moments"] = {{"M1", m.M1},
                    {"M2", m.M2},
                    {"M2_prime", m.M2_prime},
                    {"lower_ie", m.lower_ie},
                    {"lower_cs", m.lower_cs},
                    {"lower_cs_num", u128_str(m.lower_cs_num)},
                    {"lower_cs_den", m.lower_cs_den},
                    {"n_with_r_positive", m.n_with_r_positive}};
    json shape;
    shape["z"] = row.z;
    shape["alpha"] = std::isnan(row.alpha) ? json() : json(row.alpha);
    shape["theta"] = std::isnan(row.theta) ? json() : json(row.theta);
    shape["branch"] = row.branch;
    shape["predicted_order"] =
        std::isnan(row.predicted_order) ? json() : json(row.predicted_order);
    shape["ratio_exact_over_predicted"] =
        std::isnan(row.ratio_exact_over_predicted)
            ? json()
            : json(row.ratio_exact_over_predicted);
    j["shape"] = shape;
    write_text(dir / "count.json", j.dump(2) + "\n");
    write_manifest(dir, "count", {"count.csv", "count.json"}, timer.seconds());
  }
  return 0;
}

// ---------------------------------------------------------------- sweep ----

struct SweepArgs {
  double x = 0;
  std::string y_list;
  std::string alpha_grid;
  double max_x = 0;
  unsigned threads = 1;
  std::string out_dir;
};

std::vector<u64> parse_y_values(const SweepArgs& a, u64 x) {
  std::vector<u64> ys;
  if (!a.y_list.empty()) {
    std::istringstream in(a.y_list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      ys.push_back(to_u64(std::stod(tok), "--y-list entry"));
    }
    if (ys.empty()) throw std::domain_error("--y-list has no values");
  } else {
    double lo, hi, step;
    char c1, c2;
    std::istringstream in(a.alpha_grid);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
        hi < lo)
      throw std::domain_error("--alpha-grid must be lo:hi:step with step > 0");
    int n = int(std::lround((hi - lo) / step)) + 1;
    double lx = std::log(double(x));
    for (int i = 0; i < n; ++i) {
      double alpha = lo + double(i) * step;
      // invert alpha = log log(x/y) / log log x
      double y = double(x) / std::exp(std::pow(lx, alpha));
      u64 yi = static_cast<u64>(std::llround(std::min(std::max(y, 2.0), double(x) / 2)));
      ys.push_back(yi);
    }
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

int run_sweep(const SweepArgs& a) {
  Timer timer;
  u64 x = to_u64(a.x, "--x");
  if (x < 3) throw std::domain_error("--x must be >= 3 for a sweep");
  if (a.y_list.empty() == a.alpha_grid.empty())
    throw std::domain_error("sweep needs exactly one of --y-list or --alpha-grid");

  spd::ExactNOptions opt;
  opt.threads = a.threads;
  opt.max_x = a.max_x > 0 ? to_u64(a.max_x, "--max-x") : env_max_x();

  std::string csv = spd::sweep_csv_header() + "\n";
  std::cout << spd::sweep_csv_header() << "\n";
  for (u64 y : parse_y_values(a, x)) {
    if (y > x) throw std::domain_error("sweep y values must be <= x");
    spd::SweepRow row = spd::build_sweep_row(x, y, opt);
    std::string line = spd::to_csv_line(row);
    std::cout << line << "\n";
    csv += line + "\n";
  }

  if (!a.out_dir.empty()) {
    fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_text(dir / "sweep.csv", csv);
    write_manifest(dir, "sweep", {"sweep.csv"}, timer.seconds());
  }
  return 0;
}

// ---------------------------------------------------------------- lemma ----

struct LemmaArgs {
  std::string id;
  bool all = false;
  bool freeze = false;
  std::string bands = "data/frozen_bands.txt";
  std::string out_dir;
  // single-run parameter overrides (NaN: use the id's default)
  double x = NAN, y = NAN, z = NAN, k = NAN, lambda = NAN, xi = NAN, c = NAN;
  double q = NAN, a = NAN, B = NAN, C = NAN, Y = NAN, v = NAN, n_max = NAN;
  bool star = false;
  std::string side = "upper";
};

spd::RatioReport run_single(const LemmaArgs& la) {
  auto pick = [](double ov, double def) { return std::isnan(ov) ? def : ov; };
  auto picku = [&](double ov, double def, const char* name) {
    return to_u64(pick(ov, def), name);
  };
  const std::string& id = la.id;

  if (id == "poisson") {
    spd::TailSide side = la.side == "lower" ? spd::TailSide::lower_tail
                                            : spd::TailSide::upper_tail;
    return spd::poisson_sandwich(pick(la.v, 100), pick(la.lambda, 0.3), side);
  }
  if (id == "bigsum_i" || id == "bigsum_ii") {
    bool high = id == "bigsum_ii";
    u64 z = picku(la.z, high ? 100 : 60, "--z");
    u64 Y = picku(la.Y, high ? double(z) : 3, "--Y");
    return spd::bigsum_S(z, Y, u32(picku(la.k, 2, "--k")), pick(la.xi, 0.0));
  }

  u64 x = picku(la.x, 100'000, "--x");
  u64 z = picku(la.z, 100, "--z");
  u32 k = u32(picku(la.k, 1, "--k"));

  if (id == "recip" || id == "sumphi") {
    u64 n_max = picku(la.n_max, 1'000'000, "--n-max");
    spd::TruncationOptions trunc{n_max};
    if (id == "recip") {
      u64 rx = picku(la.x, 10'000, "--x");
      spd::SpfTable spf = spd::SpfTable::build(n_max);
      return spd::recip_weighted_sum(rx, z, k, pick(la.xi, 0.0), pick(la.c, 0.0),
                                     spf, trunc);
    }
    spd::SpfTable spf = spd::SpfTable::build(z);
    return spd::sumphi_tail(z, pick(la.lambda, 0.3), spf, trunc);
  }

  spd::SpfTable spf = spd::SpfTable::build(id == "selberg" ? picku(la.x, 10'000, "--x") : x);
  if (id == "selberg") return spd::selberg_ratio(picku(la.x, 10'000, "--x"), u32(picku(la.k, 2, "--k")), spf);
  if (id == "halasz_count")
    return spd::halasz_counts(x, z, k, la.star, spd::HalaszMode::count, spf);
  if (id == "halasz_recip")
    return spd::halasz_counts(x, z, k, la.star, spd::HalaszMode::recip_sum, spf);
  if (id == "hall_lower") return spd::hall_pair_lower(x, z, k, spf);
  if (id == "timofeev_upper") return spd::timofeev_counts(x, z, k, la.star, spf);
  if (id == "timofeev_lower") return spd::timofeev_triple_lower(x, z, k, spf);
  if (id == "cct")
    return spd::cct_count(x, picku(la.q, 3, "--q"), picku(la.a, 1, "--a"),
                          u32(picku(la.k, 2, "--k")), spf);
  if (id == "tails") return spd::tail_counts(x, z, pick(la.lambda, 0.6), la.star, spf);
  if (id == "smooth") return spd::smooth_ratio(x, picku(la.y, 316, "--y"), spf);
  if (id == "rough") return spd::rough_ratio(x, picku(la.z, 10, "--z"), spf);
  if (id == "primecor_single")
    return spd::primecor_count(picku(la.x, 10'000, "--x"), picku(la.z, 3, "--z"),
                               picku(la.B, 2, "--B"), std::nullopt, spf);
  if (id == "primecor_pair")
    return spd::primecor_count(picku(la.x, 10'000, "--x"), picku(la.z, 3, "--z"),
                               picku(la.B, 2, "--B"), picku(la.C, 4, "--C"), spf);
  throw std::logic_error("unhandled id " + id);  // guarded by the caller
}

int run_lemma(const LemmaArgs& la) {
  Timer timer;
  if (la.all == !la.id.empty())
    throw std::domain_error("lemma needs exactly one of --id or --all");

  if (!la.all) {
    const auto& ids = spd::registry_ids();
    if (std::find(ids.begin(), ids.end(), la.id) == ids.end()) {
      std::cerr << "unknown lemma id '" << la.id << "'; valid ids:";
      for (const auto& id : ids) std::cerr << " " << id;
      std::cerr << "\n";
      return 1;
    }
    spd::RatioReport r = run_single(la);
    std::cout << spd::lemma_csv_header() << "\n" << spd::to_csv_line(r) << "\n";
    if (!la.out_dir.empty()) {
      fs::path dir(la.out_dir);
      fs::create_directories(dir);
      write_text(dir / "lemma.csv",
                 spd::lemma_csv_header() + "\n" + spd::to_csv_line(r) + "\n");
      write_text(dir / "lemma.json", report_json(r).dump(2) + "\n");
      write_manifest(dir, "lemma", {"lemma.csv", "lemma.json"}, timer.seconds());
    }
    return 0;
  }

  std::optional<spd::BandTable> table;
  if (!la.freeze) table = spd::BandTable::load(la.bands);  // missing file -> exit 2

  spd::RegistryRun run = spd::run_registry();
  std::string csv = spd::lemma_csv_header() + "\n";
  for (const auto& r : run.reports) csv += spd::to_csv_line(r) + "\n";
  std::cout << csv;

  if (!la.out_dir.empty()) {
    fs::path dir(la.out_dir);
    fs::create_directories(dir);
    write_text(dir / "lemma_all.csv", csv);
    write_manifest(dir, "lemma", {"lemma_all.csv"}, timer.seconds());
  }

  if (la.freeze) {
    spd::BandTable t = run.freeze();
    if (fs::path(la.bands).has_parent_path())
      fs::create_directories(fs::path(la.bands).parent_path());
    t.save(la.bands);
    std::cerr << "froze " << t.bands.size() << " bands to " << la.bands << "\n";
    return 0;
  }

  std::vector<std::string> bad = run.check(*table);
  if (!bad.empty()) {
    for (const auto& msg : bad) std::cerr << "band violation: " << msg << "\n";
    return 3;
  }
  std::cerr << run.reports.size() << " reports within " << table->bands.size()
            << " frozen bands\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and asymptotic counting of integers with a large "
               "shifted-prime divisor"};
  app.set_version_flag("--version", std::string(spd::kVersion));
  app.require_subcommand(1);

  CountArgs ca;
  CLI::App* count = app.add_subcommand("count", "exact N(x, y) with moment bounds");
  count->add_option("--x", ca.x, "upper limit, counts n <= x")->required();
  count->add_option("--y", ca.y, "prime lower bound, p > y")->required();
  count->add_option("--threads", ca.threads, "worker threads for the marking pass");
  count->add_option("--max-x", ca.max_x, "memory budget on x (overrides SPD_MAX_X)");
  count->add_option("--out-dir", ca.out_dir, "write count.csv/count.json here");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "N(x, y) across a set of y values");
  sweep->add_option("--x", sa.x, "upper limit, counts n <= x")->required();
  sweep->add_option("--y-list", sa.y_list, "comma separated y values");
  sweep->add_option("--alpha-grid", sa.alpha_grid,
                    "lo:hi:step over alpha = log log(x/y)/log log x");
  sweep->add_option("--threads", sa.threads, "worker threads for the marking pass");
  sweep->add_option("--max-x", sa.max_x, "memory budget on x (overrides SPD_MAX_X)");
  sweep->add_option("--out-dir", sa.out_dir, "write sweep.csv here");

  LemmaArgs la;
  CLI::App* lemma = app.add_subcommand("lemma", "verified inequality reports");
  lemma->add_option("--id", la.id, "single lemma id (see --id help on mistype)");
  lemma->add_flag("--all", la.all, "run the whole registry grid");
  lemma->add_flag("--freeze", la.freeze, "write the observed ratio bands");
  lemma->add_option("--bands", la.bands, "band file path")->capture_default_str();
  lemma->add_option("--out-dir", la.out_dir, "write lemma csv/json here");
  lemma->add_option("--x", la.x, "override x");
  lemma->add_option("--y", la.y, "override y");
  lemma->add_option("--z", la.z, "override z");
  lemma->add_option("--k", la.k, "override k / m / w");
  lemma->add_option("--lambda", la.lambda, "override lambda");
  lemma->add_option("--xi", la.xi, "override xi");
  lemma->add_option("--c", la.c, "override c");
  lemma->add_option("--q", la.q, "override q (cct)");
  lemma->add_option("--a", la.a, "override a (cct)");
  lemma->add_option("--B", la.B, "override B (primecor)");
  lemma->add_option("--C", la.C, "override C (primecor_pair)");
  lemma->add_option("--Y", la.Y, "override Y (bigsum)");
  lemma->add_option("--v", la.v, "override v (poisson)");
  lemma->add_option("--n-max", la.n_max, "override truncation point");
  lemma->add_flag("--star", la.star, "odd-prime multiplicity variant");
  lemma->add_option("--side", la.side, "poisson tail side: lower | upper")
      ->check(CLI::IsMember({"lower", "upper"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (count->parsed()) return run_count(ca);
    if (sweep->parsed()) return run_sweep(sa);
    return run_lemma(la);
  } catch (const spd::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const spd::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
