#include <benchmark/benchmark.h>

#include <cstdint>

#include "spd/factor.hpp"
#include "spd/shifted.hpp"
#include "spd/sieve.hpp"

using u64 = std::uint64_t;

namespace {

void bm_primes_in_range(benchmark::State& state) {
  const u64 hi = u64(state.range(0));
  for (auto _ : state) {
    auto pt = spd::primes_in_range(2, hi);
    benchmark::DoNotOptimize(pt.primes.data());
  }
  state.SetItemsProcessed(state.iterations() * hi);
}
BENCHMARK(bm_primes_in_range)->Arg(1'000'000)->Arg(10'000'000);

void bm_spf_build(benchmark::State& state) {
  const u64 limit = u64(state.range(0));
  for (auto _ : state) {
    auto t = spd::SpfTable::build(limit);
    benchmark::DoNotOptimize(t.limit());
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(bm_spf_build)->Arg(1'000'000)->Arg(10'000'000);

void bm_exact_N(benchmark::State& state) {
  const u64 x = u64(state.range(0));
  const u64 y = u64(state.range(1));
  u64 last = 0;
  for (auto _ : state) {
    last = spd::exact_N(x, y);
    benchmark::DoNotOptimize(last);
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(bm_exact_N)
    ->Args({1'000'000, 100})
    ->Args({10'000'000, 1000})
    ->Args({100'000'000, 10'000});

void bm_moments(benchmark::State& state) {
  const u64 x = u64(state.range(0));
  const u64 y = u64(state.range(1));
  for (auto _ : state) {
    spd::MomentReport m = spd::moments(x, y);
    benchmark::DoNotOptimize(m.M2);
  }
  state.SetItemsProcessed(state.iterations() * x);
}
BENCHMARK(bm_moments)->Args({1'000'000, 100})->Args({10'000'000, 1000});

}  // namespace

BENCHMARK_MAIN();
