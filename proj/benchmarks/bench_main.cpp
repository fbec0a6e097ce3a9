#include <benchmark/benchmark.h>

#include "uwdgos/estimation.hpp"
#include "uwdgos/mle.hpp"
#include "uwdgos/risk.hpp"

using namespace uwdgos;

namespace {

DgosSample fixture(SchemeKind kind, std::size_t n) {
  Rng rng = make_rng(derive_seed(99, {static_cast<std::uint64_t>(kind), n}));
  return sample_dgos(rng, make_scheme(kind, n), {1, 1});
}

void BM_Mle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DgosScheme scheme = make_scheme(SchemeKind::order_statistics, n);
  const DgosSample s = fixture(SchemeKind::order_statistics, n);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(s, scheme).params);
}
BENCHMARK(BM_Mle)->Arg(15)->Arg(100)->Arg(1000);

void BM_Method(benchmark::State& state, Method m) {
  const std::size_t n = 15;
  const DgosScheme scheme = make_scheme(SchemeKind::lower_records, n);
  const DgosSample s = fixture(SchemeKind::lower_records, n);
  EstimationSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(compute_estimates(m, s, scheme, GammaPriors(2, 2, 2, 2), settings));
}
BENCHMARK_CAPTURE(BM_Method, lindley, Method::lindley);
BENCHMARK_CAPTURE(BM_Method, tk, Method::tk);
BENCHMARK_CAPTURE(BM_Method, mcmc, Method::mcmc)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const DgosScheme scheme = make_scheme(SchemeKind::order_statistics, 1000);
  Rng rng = make_rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sample_dgos(rng, scheme, {1.5, 0.8}));
}
BENCHMARK(BM_Sample);

}  // namespace
BENCHMARK_MAIN();
