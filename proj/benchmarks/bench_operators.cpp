#include <benchmark/benchmark.h>

#include "lacuna/directions.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/field.hpp"
#include "lacuna/operators.hpp"

namespace {

using namespace lacuna;

void BM_ForwardInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexField f = random_probe(n, 7, false);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(forward(f)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_ForwardInverse)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MaxHilbert(benchmark::State& state) {
  const std::size_t n = 256;
  ComplexField f = random_probe(n, 11, true);
  DirectionSet set = experiment_set(1, Rational(9, 10), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_hilbert(f, set, false));
}
BENCHMARK(BM_MaxHilbert)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);

void BM_MaxAverage(benchmark::State& state) {
  const std::size_t n = 128;
  ComplexField f = random_probe(n, 13, false);
  DirectionSet set = experiment_set(1, Rational(9, 10), static_cast<std::size_t>(state.range(0)));
  ScaleGrid grid = ScaleGrid::standard(n);
  for (auto _ : state) benchmark::DoNotOptimize(max_average(f, set, grid));
}
BENCHMARK(BM_MaxAverage)->RangeMultiplier(4)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_AscentStep(benchmark::State& state) {
  const std::size_t n = 256;
  OperatorSpec op;
  op.id = "max_hilbert";
  op.set = experiment_set(1, Rational(9, 10), 16);
  ComplexField f = random_probe(n, 17, true);
  for (auto _ : state) {
    Linearization lin = linearize(op, f);
    benchmark::DoNotOptimize(lin.adjoint(lin.image));
  }
}
BENCHMARK(BM_AscentStep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
