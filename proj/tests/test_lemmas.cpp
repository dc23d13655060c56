#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spd/bands.hpp"
#include "spd/errors.hpp"
#include "spd/factor.hpp"
#include "spd/lemmas.hpp"
#include "spd/registry.hpp"
#include "spd/sieve.hpp"

using spd::BandEntry;
using spd::BandTable;
using spd::Direction;
using spd::HalaszMode;
using spd::RatioReport;
using spd::RegistryRun;
using spd::SpfTable;
using spd::TruncationOptions;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

namespace {

const SpfTable& table() {
  static SpfTable t = SpfTable::build(1'000'000);
  return t;
}

struct TmpFile {
  std::string path;
  explicit TmpFile(const std::string& name, const std::string& content = "")
      : path(name) {
    if (!content.empty()) {
      std::ofstream out(path, std::ios::trunc);
      out << content;
    }
  }
  ~TmpFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("selberg ratio") {
  RatioReport base = spd::selberg_ratio(100, 0, table());
  CHECK(base.lhs == 1.0);  // only n = 1 has no prime factors
  CHECK(base.rhs == 1.0);
  CHECK(base.ratio == 1.0);
  CHECK(base.applicable);
  CHECK(base.direction == Direction::two_sided);

  RatioReport primes = spd::selberg_ratio(100, 1, table());
  CHECK(primes.lhs ==
        doctest::Approx(1.8028172010488706).epsilon(1e-9));  // sum 1/p, p <= 100

  RatioReport mid = spd::selberg_ratio(1'000'000, 3, table());
  CHECK(mid.ratio > 0.1);
  CHECK(mid.ratio < 10.0);

  RatioReport far = spd::selberg_ratio(100, 10, table());
  CHECK(!far.applicable);  // 10 > 1.9 log log 100
  CHECK(far.note.find("1.9") != std::string::npos);
}

TEST_CASE("halasz class counts") {
  RatioReport all = spd::halasz_counts(100, 100, 0, false, HalaszMode::count, table());
  CHECK(all.lhs == 1.0);  // only n = 1

  RatioReport rough5 = spd::halasz_counts(100, 5, 0, false, HalaszMode::count, table());
  CHECK(rough5.lhs == 26.0);

  for (auto [x, z] : {std::pair<u64, u64>{1000, 7},
                      {10'000, 13},
                      {100'000, 101},
                      {1'000'000, 997}}) {
    RatioReport r = spd::halasz_counts(x, z, 0, false, HalaszMode::count, table());
    CHECK(u64(std::llround(r.lhs)) == spd::count_rough(x, z, table()));
  }

  RatioReport recip = spd::halasz_counts(100, 100, 0, false, HalaszMode::recip_sum, table());
  CHECK(recip.lhs == 1.0);  // 1/1

  RatioReport deep = spd::halasz_counts(10'000, 100, 9, false, HalaszMode::count, table());
  CHECK(!deep.applicable);  // 9 > 1.9 log log 100
  RatioReport deep_star = spd::halasz_counts(10'000, 100, 4, true, HalaszMode::count, table());
  CHECK(deep_star.applicable);  // 4 <= 2.9 log log 100
}

TEST_CASE("hall pair lower bound counts two classes") {
  RatioReport pair = spd::hall_pair_lower(10'000, 100, 1, table());
  RatioReport m1 = spd::halasz_counts(10'000, 100, 1, false, HalaszMode::count, table());
  RatioReport m2 = spd::halasz_counts(10'000, 100, 2, false, HalaszMode::count, table());
  CHECK(pair.lhs == m1.lhs + m2.lhs);
  CHECK(pair.direction == Direction::lower);
}

TEST_CASE("timofeev shifted-prime classes") {
  CHECK(spd::timofeev_counts(100, 100, 0, false, table()).lhs == 1.0);  // p = 2
  CHECK(spd::timofeev_counts(100, 100, 1, false, table()).lhs == 1.0);  // p = 3

  // classes partition the primes
  double sum = 0;
  for (u32 m = 0; m <= 30; ++m)
    sum += spd::timofeev_counts(100'000, 100, m, false, table()).lhs;
  CHECK(sum == 9592.0);  // pi(10^5)

  RatioReport triple = spd::timofeev_triple_lower(10'000, 100, 1, table());
  double parts = 0;
  for (u32 m = 1; m <= 3; ++m)
    parts += spd::timofeev_counts(10'000, 100, m, false, table()).lhs;
  CHECK(triple.lhs == parts);
  CHECK(triple.direction == Direction::lower);

  RatioReport small_z = spd::timofeev_counts(10'000, 50, 1, false, table());
  CHECK(small_z.note.find("threshold") != std::string::npos);
}

TEST_CASE("weighted reciprocal sum") {
  TruncationOptions trunc{10'000};
  RatioReport base = spd::recip_weighted_sum(100, 100, 0, 0.0, 0.0, table(), trunc);
  CHECK(base.lhs == 1.0);  // only n = 1 in the empty class

  // the xi weight raises each term by at most n_max^xi
  TruncationOptions t6{1'000'000};
  double xi_max = 1.0 / (5.0 * std::log(1e4));
  RatioReport flat = spd::recip_weighted_sum(10'000, 100, 1, 0.0, 0.0, table(), t6);
  RatioReport tilted = spd::recip_weighted_sum(10'000, 100, 1, xi_max, 0.0, table(), t6);
  CHECK(tilted.lhs >= flat.lhs);
  CHECK(tilted.lhs <= std::pow(1e6, xi_max) * flat.lhs);

  CHECK(flat.tail_ok == (flat.tail_bound < 0.01 * flat.lhs));
  CHECK(flat.tail_bound > 0.0);
}

TEST_CASE("residue class count with few prime factors") {
  RatioReport r = spd::cct_count(30, 3, 1, 1, table());
  CHECK(r.lhs == 7.0);  // 1, 4, 7, 13, 16, 19, 25

  RatioReport degenerate = spd::cct_count(30, 3, 1, 0, table());
  CHECK(degenerate.lhs == 1.0);  // n = 1 has omega = 0
  CHECK(degenerate.rhs == 0.0);  // empty sum
  CHECK(std::isinf(degenerate.ratio));
  CHECK(degenerate.note.find("k = 0") != std::string::npos);

  CHECK_THROWS_AS(spd::cct_count(100, 4, 2, 1, table()), std::domain_error);

  // q = 1 puts every integer in the class
  RatioReport all = spd::cct_count(100, 1, 0, 2, table());
  u64 direct = 0;
  for (u64 n = 1; n <= 100; ++n)
    if (spd::factorize(n, table()).factors.size() <= 2) ++direct;
  CHECK(u64(std::llround(all.lhs)) == direct);
}

TEST_CASE("tail counts over the factor-count threshold") {
  double llz = std::log(std::log(100.0));
  RatioReport r = spd::tail_counts(100, 100, (3.0 - 1e-9) / llz - 1.0, false, table());
  CHECK(r.lhs == 40.0);  // Omega(n) >= 3 below 100

  RatioReport star = spd::tail_counts(1000, 100, 0.5, true, table());
  CHECK(star.note.find("lambda range") != std::string::npos);

  RatioReport wide = spd::tail_counts(1000, 100, 0.99, false, table());
  CHECK(!wide.applicable);

  // classes + tail partition [1, x]
  const u64 x = 100'000, z = 100;
  double lam4 = (4.0 - 1e-9) / llz - 1.0;
  double total = spd::tail_counts(x, z, lam4, false, table()).lhs;
  for (u32 m = 0; m <= 3; ++m)
    total += spd::halasz_counts(x, z, m, false, HalaszMode::count, table()).lhs;
  CHECK(total == double(x));
}

TEST_CASE("smooth reciprocal-totient tail") {
  RatioReport r = spd::sumphi_tail(1000, 0.3, table(), TruncationOptions{1'000'000});
  CHECK(r.lhs > 0.0);
  CHECK(r.applicable);

  RatioReport above = spd::sumphi_tail(1000, 0.8, table(), TruncationOptions{10'000});
  CHECK(!above.applicable);
  CHECK(above.note.find("0.7") != std::string::npos);

  // truncation below the first qualifying m: lhs 0, tail bound still honest
  RatioReport empty = spd::sumphi_tail(1000, 0.6, table(), TruncationOptions{8});
  CHECK(empty.lhs == 0.0);
  CHECK(empty.tail_bound > 0.0);
  CHECK(!empty.tail_ok);

  // lambda = 0 keeps everything with Omega(m) >= 2
  RatioReport low = spd::sumphi_tail(100, 0.0, table(), TruncationOptions{1000});
  double direct = 0;
  for (u64 m = 2; m <= 1000; ++m) {
    spd::OmegaStats s = spd::omega_stats(m, 1000, table());
    if (s.p_plus <= 100 && s.big_omega >= 2)
      direct += 1.0 / double(spd::euler_phi(m, table()));
  }
  CHECK(low.lhs == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("smooth and rough count ratios") {
  RatioReport sm = spd::smooth_ratio(10'000, 100, table());
  CHECK(sm.lhs == 3716.0);
  CHECK(sm.ratio == doctest::Approx(1.010114).epsilon(1e-4));
  CHECK(sm.direction == Direction::upper);

  RatioReport rg = spd::rough_ratio(10'000, 10, table());
  CHECK(rg.lhs == 2285.0);
  CHECK(rg.ratio > 0.2);
  CHECK(rg.ratio < 3.0);
  CHECK(rg.direction == Direction::two_sided);

  RatioReport narrow = spd::rough_ratio(150, 100, table());
  CHECK(narrow.direction == Direction::upper);
  CHECK(narrow.note.find("upper") != std::string::npos);
}

TEST_CASE("shifted-prime correlation counts") {
  RatioReport single = spd::primecor_count(20, 3, 2, std::nullopt, table());
  CHECK(single.lhs == 6.0);  // h in {1,3,5,9,11,15}

  RatioReport pair = spd::primecor_count(20, 3, 2, 4, table());
  CHECK(pair.lhs == 4.0);  // h in {1,3,9,15}

  CHECK_THROWS_AS(spd::primecor_count(100, 3, 3, std::nullopt, table()),
                  std::domain_error);  // odd B
  CHECK_THROWS_AS(spd::primecor_count(100, 3, 2, 2, table()),
                  std::domain_error);  // B == C
  CHECK_THROWS_AS(spd::primecor_count(5, 3, 2, std::nullopt, table()),
                  std::domain_error);  // x <= 2z

  // pair right side carries the prime product over BC|B-C| and gcd(B,C)
  RatioReport f = spd::primecor_count(10'000, 3, 2, 6, table());
  double lx = std::log(1e4);
  double expect = 1e4 / (std::log(3.0) * lx * lx) * 3.0 * 2.0;
  CHECK(f.rhs == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("quadruple sum closed form at w = 1") {
  // only a = c = d = 1 and b = p survive, so S = sum over p <= z of 1/phi(p-1)
  double direct = 0;
  spd::for_each_prime(2, 50, [&](u64 p) {
    direct += 1.0 / double(p == 2 ? 1 : spd::euler_phi(p - 1, table()));
  });
  CHECK(direct == doctest::Approx(4.374621212121212).epsilon(1e-12));

  RatioReport lo_y = spd::bigsum_S(50, 2, 1, 0.0);
  RatioReport hi_y = spd::bigsum_S(50, 50, 1, 0.0);
  CHECK(lo_y.lhs == doctest::Approx(4.374621212121212).epsilon(1e-12));
  CHECK(hi_y.lhs == doctest::Approx(lo_y.lhs).epsilon(1e-12));
  CHECK(lo_y.lemma_id == "bigsum_i");
  CHECK(hi_y.lemma_id == "bigsum_ii");
}

TEST_CASE("quadruple sum against a direct enumeration") {
  const u64 z = 25, Y = 5;
  const u32 w = 3;
  std::vector<u32> om(z + 1, 0);
  std::vector<double> ph(z + 1, 1.0);
  for (u64 n = 1; n <= z; ++n) {
    om[n] = spd::omega_stats(n, n < 2 ? 2 : n, table()).big_omega;
    ph[n] = double(spd::euler_phi(n, table()));
  }
  for (double xi : {0.0, 1.0 / (10.0 * std::log(5.0))}) {
    long double direct = 0;
    for (u64 di = 1; di <= 1000; di *= 2)
      for (u64 dj = di; dj <= 1000; dj *= 3)
        for (u64 d = dj; d <= 1000; d *= 5) {
          u32 om_d = spd::omega_stats(d, d < 2 ? 2 : d, table()).big_omega;
          if (om_d > w) continue;
          double phd = double(spd::euler_phi(d, table()));
          double dpart = std::pow(double(d), xi - 1.0) * (double(d) / phd) *
                         (double(d) / phd);
          for (u64 a = 1; a <= z; ++a) {
            if (om[a] + om_d > w) continue;
            for (u64 b = 2; b <= z; ++b)
              for (u64 c = 1; c < b; ++c) {
                if (om[a] + om[b] + om[c] + om_d > w) continue;
                double bc = double(b - c) / ph[b - c];
                direct += dpart / (double(a) * double(b) * double(c)) *
                          (double(b) / ph[b]) * (double(c) / ph[c]) * bc;
              }
          }
        }
    RatioReport r = spd::bigsum_S(z, Y, w, xi);
    CHECK(r.lhs == doctest::Approx(double(direct)).epsilon(1e-12));
    CHECK(r.tail_bound == 0.0);  // Y^w = 125 is under the d cap
    CHECK(r.tail_ok);
  }
}

TEST_CASE("quadruple sum growth and guards") {
  double prev = 0;
  for (u32 w : {1u, 2u, 3u}) {
    RatioReport r = spd::bigsum_S(50, 7, w, 0.0);
    CHECK(r.lhs >= prev);
    prev = r.lhs;
  }

  CHECK(spd::bigsum_S(60, 3, 2, 0.0).lemma_id == "bigsum_i");
  CHECK(spd::bigsum_S(100, 100, 2, 0.0).lemma_id == "bigsum_ii");
  CHECK(spd::bigsum_S(60, 57, 2, 0.0).lemma_id == "bigsum_ii");

  CHECK_THROWS_AS(spd::bigsum_S(2000, 7, 2, 0.0), spd::ResourceError);

  spd::BigsumOptions tiny;
  tiny.z_cap = 1000;
  tiny.d_cap = 100;
  RatioReport truncated = spd::bigsum_S(50, 7, 5, 0.0, tiny);
  CHECK(truncated.tail_bound > 0.0);  // 7^5 overflows the d cap
}

TEST_CASE("poisson sandwich reports") {
  for (double v : {10.0, 25.0, 100.0, 400.0}) {
    double lo = std::pow(v, -0.5);
    for (double lam : {lo, 0.5 * (lo + 0.5), 0.5})
      for (spd::TailSide side : {spd::TailSide::lower_tail, spd::TailSide::upper_tail}) {
        RatioReport r = spd::poisson_sandwich(v, lam, side);
        CHECK(r.ratio > 0.0);
        CHECK(r.ratio < 1.0);  // the bound really bounds
        CHECK(r.applicable);
        CHECK(r.direction == Direction::two_sided);
      }
  }
  CHECK(!spd::poisson_sandwich(25.0, 0.05, spd::TailSide::upper_tail).applicable);
}

TEST_CASE("registry id list") {
  const auto& ids = spd::registry_ids();
  CHECK(ids.size() == 17);
  std::set<std::string> uniq(ids.begin(), ids.end());
  CHECK(uniq.size() == ids.size());
  CHECK(uniq.count("selberg") == 1);
  CHECK(uniq.count("bigsum_ii") == 1);
}

TEST_CASE("band table round trip") {
  BandTable t;
  t.grid_hash = 0xdeadbeefcafef00dULL;
  t.bands["alpha"] = {0.1, 1.0 / 3.0};
  t.bands["beta"] = {1e-300, 6.02214076e23};
  t.bands["gamma"] = {std::nextafter(1.0, 2.0), 12345.678901234567};

  TmpFile tmp("tmp_band_roundtrip.txt");
  t.save(tmp.path);
  BandTable back = BandTable::load(tmp.path);
  CHECK(back.version == 1);
  CHECK(back.grid_hash == t.grid_hash);
  REQUIRE(back.bands.size() == 3);
  for (const auto& [id, e] : t.bands) {
    CHECK(back.bands.at(id).lo == e.lo);  // bit-exact
    CHECK(back.bands.at(id).hi == e.hi);
  }
}

TEST_CASE("band table load failures") {
  CHECK_THROWS_AS(BandTable::load("definitely_missing_bands.txt"),
                  spd::ResourceError);

  TmpFile garbage("tmp_band_garbage.txt",
                  "version 1\ngrid_hash ff\nbogus line here\n");
  CHECK_THROWS_AS(BandTable::load(garbage.path), spd::FormatError);

  TmpFile dup("tmp_band_dup.txt",
              "version 1\ngrid_hash ff\nband a 1 2\nband a 1 2\n");
  CHECK_THROWS_AS(BandTable::load(dup.path), spd::FormatError);

  TmpFile v2("tmp_band_v2.txt", "version 2\ngrid_hash ff\n");
  CHECK_THROWS_AS(BandTable::load(v2.path), spd::FormatError);

  TmpFile noversion("tmp_band_nover.txt", "grid_hash ff\nband a 1 2\n");
  CHECK_THROWS_AS(BandTable::load(noversion.path), spd::FormatError);

  TmpFile badnum("tmp_band_badnum.txt",
                 "version 1\ngrid_hash ff\nband a 1 two\n");
  CHECK_THROWS_AS(BandTable::load(badnum.path), spd::FormatError);
}

TEST_CASE("registry check semantics") {
  auto report = [](const std::string& id, double ratio, Direction dir) {
    RatioReport r;
    r.lemma_id = id;
    r.params = {{"x", 1.0}};
    r.lhs = ratio;
    r.rhs = 1.0;
    r.ratio = ratio;
    r.direction = dir;
    return r;
  };

  RegistryRun run;
  run.grid_hash = 42;
  run.reports = {report("up", 0.5, Direction::upper),
                 report("down", 2.0, Direction::lower),
                 report("both", 1.0, Direction::two_sided)};

  BandTable good;
  good.grid_hash = 42;
  good.bands["up"] = {0.9, 0.6};    // upper checks hi only: 0.5 <= 0.6 passes
  good.bands["down"] = {1.5, 1.7};  // lower checks lo only: 2.0 >= 1.5 passes
  good.bands["both"] = {0.9, 1.1};
  CHECK(run.check(good).empty());

  BandTable stale = good;
  stale.grid_hash = 7;
  auto msgs = run.check(stale);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("grid hash mismatch") != std::string::npos);

  BandTable tight = good;
  tight.bands["up"] = {0.0, 0.4};  // 0.5 > 0.4 violates
  msgs = run.check(tight);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("up") != std::string::npos);
  CHECK(msgs[0].find("outside band") != std::string::npos);

  BandTable missing = good;
  missing.bands.erase("down");
  missing.bands["orphan"] = {0.0, 1.0};
  msgs = run.check(missing);
  REQUIRE(msgs.size() == 2);
  CHECK(msgs[0].find("no frozen band for id down") != std::string::npos);
  CHECK(msgs[1].find("band id orphan produced no reports") != std::string::npos);

  // freeze covers exactly the observed ids and contains every ratio
  BandTable frozen = run.freeze();
  CHECK(frozen.grid_hash == run.grid_hash);
  CHECK(frozen.bands.size() == 3);
  CHECK(frozen.bands.at("up").lo == 0.5);
  CHECK(frozen.bands.at("up").hi == 0.5);
  CHECK(run.check(frozen).empty());
}
