#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "detail.hpp"
#include "mscale/multiscale.hpp"
#include "mscale/synthetic.hpp"

namespace {

using mscale::detail::MatchStrategy;

const mscale::Signal& noise(std::size_t n) {
  static const mscale::Signal long_noise = mscale::gen_wgn(40000, mscale::Seed{0});
  static std::map<std::size_t, mscale::Signal> cache;
  if (const auto it = cache.find(n); it != cache.end()) return it->second;
  const auto x = long_noise.samples().first(n);
  return cache.emplace(n, mscale::Signal(std::vector<double>(x.begin(), x.end()))).first->second;
}

// args: length, m, tolerance in hundredths of the SD
template <MatchStrategy S>
void BM_MatchCounts(benchmark::State& state) {
  const auto& x = noise(static_cast<std::size_t>(state.range(0)));
  const int m = static_cast<int>(state.range(1));
  const double r = static_cast<double>(state.range(2)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mscale::detail::match_counts(x, m, r, S));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void MatchArgs(benchmark::internal::Benchmark* b) {
  for (const long n : {2000L, 10000L, 40000L}) {
    for (const long m : {1L, 2L}) {
      for (const long r : {15L, 60L}) b->Args({n, m, r});
    }
  }
}

BENCHMARK(BM_MatchCounts<MatchStrategy::Scan>)->Apply(MatchArgs)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchCounts<MatchStrategy::RangeCount>)->Apply(MatchArgs)->Unit(benchmark::kMillisecond);

void BM_FuzzyEntropy(benchmark::State& state) {
  const auto& x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mscale::fuzzy_entropy(x, 2, 2.0, 0.15));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FuzzyEntropy)->Arg(1000)->Arg(4000)->Arg(10000)->Unit(benchmark::kMillisecond);

// args: estimator, moment, refined composite
void BM_Profile(benchmark::State& state) {
  mscale::MultiscaleConfig c;
  c.estimator = state.range(0) == 0 ? mscale::Estimator::Sample : mscale::Estimator::Fuzzy;
  c.moment = state.range(1) == 0 ? mscale::Moment::Mean : mscale::Moment::StdDev;
  c.refined_composite = state.range(2) != 0;
  c.scales = {c.moment == mscale::Moment::Mean ? 1 : 2, 20};
  state.SetLabel(c.method_name());
  const auto& x = noise(10000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mscale::multiscale_profile(x, c));
  }
}
BENCHMARK(BM_Profile)->ArgsProduct({{0, 1}, {0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
