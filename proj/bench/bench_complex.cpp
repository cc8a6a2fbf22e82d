#include <benchmark/benchmark.h>

#include <random>

#include "kht/complex.hpp"

using namespace kht;

namespace {

BraidWord bench_word(int letters) {
  std::mt19937_64 rng(17);
  std::vector<Letter> ls;
  for (int i = 0; i < letters; ++i) ls.push_back({1 + int(rng() % 3), rng() % 2 ? 1 : -1});
  return BraidWord(4, std::move(ls));
}

void BM_BuildComplex(benchmark::State& state) {
  const BraidWord w = bench_word(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(w, FrobeniusKind::BarNatan).size());
}

void BM_BuildComplexReference(benchmark::State& state) {
  const BraidWord w = bench_word(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_complex_reference(w, FrobeniusKind::BarNatan).gens.size());
}

}  // namespace

BENCHMARK(BM_BuildComplex)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildComplexReference)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
