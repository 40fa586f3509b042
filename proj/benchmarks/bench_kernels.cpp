#include <random>

#include <benchmark/benchmark.h>

#include "epilim/families.hpp"
#include "epilim/gamma.hpp"
#include "epilim/regularize.hpp"
#include "epilim/transform.hpp"
#include "oracles.hpp"

namespace {

using namespace epilim;

GridFn random_function(std::size_t count) {
  std::mt19937_64 rng(count);
  return oracle::random_convex_pl(rng, Grid1D(-2.0, 2.0, count), 12);
}

void BM_Conjugate(benchmark::State& state) {
  const GridFn f = random_function(static_cast<std::size_t>(state.range(0)));
  const SlopeGrid s = default_slope_grid(f);
  for (auto _ : state) benchmark::DoNotOptimize(conjugate(f, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Conjugate)->Arg(257)->Arg(1025)->Arg(4097)->Arg(16385)->Arg(65537)->Complexity(benchmark::oN);

void BM_ConjugateOracle(benchmark::State& state) {
  const GridFn f = random_function(static_cast<std::size_t>(state.range(0)));
  const SlopeGrid s = default_slope_grid(f);
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_oracle(f, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConjugateOracle)->Arg(257)->Arg(1025)->Arg(4097)->Complexity(benchmark::oNSquared);

void BM_MoreauEnvelope(benchmark::State& state) {
  const GridFn f = random_function(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moreau_envelope(f, 0.25));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MoreauEnvelope)->Arg(257)->Arg(1025)->Arg(4097)->Arg(16385)->Arg(65537)->Complexity(benchmark::oN);

void BM_MoreauBruteForce(benchmark::State& state) {
  const GridFn f = random_function(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::moreau(f, 0.25));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MoreauBruteForce)->Arg(257)->Arg(1025)->Arg(4097)->Complexity(benchmark::oNSquared);

void BM_GammaLiminf(benchmark::State& state) {
  const FamilySpec& fam = find_family("quadratic");
  const Grid1D g = fam.default_grid();
  const int horizon = static_cast<int>(state.range(0));
  const FnSeq seq = fam.sequence(g, horizon);
  const GammaParams p = fam.params(g, horizon);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_liminf(seq, p));
}
BENCHMARK(BM_GammaLiminf)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
