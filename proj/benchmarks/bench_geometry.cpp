#include <benchmark/benchmark.h>

#include "finsler/dimension.hpp"
#include "finsler/geometry.hpp"
#include "finsler/invariants.hpp"
#include "finsler/library.hpp"
#include "finsler/projective.hpp"
#include "finsler/s_quantities.hpp"
#include "finsler/sampling.hpp"

using namespace finsler;

namespace {
const SamplePoint kAt{{0.1, 0.2, -0.1}, {1.0, 0.5, 0.3}};
}

static void BM_Spray(benchmark::State& state) {
  const auto m = funk({3});
  for (auto _ : state) benchmark::DoNotOptimize(spray(m, kAt));
}
BENCHMARK(BM_Spray);

static void BM_Curvature(benchmark::State& state) {
  const auto m = funk({3});
  for (auto _ : state) benchmark::DoNotOptimize(curvature(m, kAt));
}
BENCHMARK(BM_Curvature)->Unit(benchmark::kMillisecond);

static void BM_SQuantities(benchmark::State& state) {
  const auto m = polynomial_randers("r", random_randers_spec(3, 1));
  const auto vol = default_volume(m);
  for (auto _ : state) benchmark::DoNotOptimize(s_quantities(m, kAt, vol));
}
BENCHMARK(BM_SQuantities)->Unit(benchmark::kMillisecond);

static void BM_InvariantTensors(benchmark::State& state) {
  const auto m = funk({3});
  for (auto _ : state) benchmark::DoNotOptimize(invariant_tensors(m, kAt));
}
BENCHMARK(BM_InvariantTensors)->Unit(benchmark::kMillisecond);

static void BM_ClassifyFlatBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = funk({n});
  const auto basis = flat_projective_basis(n);
  const auto pts = sample_points(n, 5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(classify(basis, m, pts));
}
BENCHMARK(BM_ClassifyFlatBasis)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DimScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = funk({n});
  const auto basis = flat_projective_basis(n);
  for (auto _ : state) benchmark::DoNotOptimize(dim_scan(m, basis));
}
BENCHMARK(BM_DimScan)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
