#include <benchmark/benchmark.h>

#include "finsler/jet.hpp"
#include "finsler/library.hpp"

using namespace finsler;

static void BM_JetProduct(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  JetContext ctx({0.1, 0.2, -0.1}, {1.0, 0.5, 0.3}, order);
  const auto z = ctx.lift_point();
  const Jet a = z[0] + z[3] * z[4];
  const Jet b = z[1] - z[5] * z[2];
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["monomials"] = static_cast<double>(a.coefficients().size());
}
BENCHMARK(BM_JetProduct)->DenseRange(4, 9, 1);

static void BM_JetSqrt(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  JetContext ctx({0.1, 0.2, -0.1}, {1.0, 0.5, 0.3}, order);
  const auto z = ctx.lift_point();
  const Jet a = 2.0 + z[0] * z[3] + z[4] * z[4];
  for (auto _ : state) benchmark::DoNotOptimize(sqrt(a));
}
BENCHMARK(BM_JetSqrt)->DenseRange(4, 9, 1);

static void BM_FunkEvaluate(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const auto m = funk({3, 1, 1, {0.5, 0, 0}});
  JetContext ctx({0.1, 0.2, -0.1}, {1.0, 0.5, 0.3}, order);
  for (auto _ : state) benchmark::DoNotOptimize(m.F().evaluate(ctx));
}
BENCHMARK(BM_FunkEvaluate)->DenseRange(4, 9, 1);
