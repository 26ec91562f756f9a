// Serial against OpenMP evaluation of the sum-product marginal kernel.

#include <benchmark/benchmark.h>

#include "finv/cayley.hpp"
#include "finv/marginal.hpp"
#include "finv/random.hpp"

namespace {

using namespace finv;

JointKernel make_kernel(int radius, int m) {
  Rng rng(kDefaultSeed);
  const TreeMarkovMeasure tm = random_markov(rng, 2, m);
  const WordSet B = ball(2, radius);
  return JointKernel(tm, std::vector<Word>(B.begin(), B.end()));
}

void BM_DenseSerial(benchmark::State& state) {
  const JointKernel jk = make_kernel(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jk.dense_serial());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jk.num_tuples()));
}

void BM_DenseParallel(benchmark::State& state) {
  const JointKernel jk = make_kernel(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jk.dense());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jk.num_tuples()));
}

void BM_EntropySerial(benchmark::State& state) {
  const JointKernel jk = make_kernel(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jk.entropy_serial());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jk.num_tuples()));
}

void BM_EntropyParallel(benchmark::State& state) {
  const JointKernel jk = make_kernel(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jk.entropy());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jk.num_tuples()));
}

}  // namespace

BENCHMARK(BM_DenseSerial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_DenseParallel)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_EntropySerial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_EntropyParallel)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
