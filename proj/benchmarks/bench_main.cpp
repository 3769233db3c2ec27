#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "tension2d/curve.hpp"
#include "tension2d/potentials.hpp"
#include "tension2d/spectra.hpp"
#include "tension2d/tension.hpp"

using namespace tension2d;

namespace {

ClosedCurve test_curve(int n) {
  return perturbed_circle(PerturbationSpec{0.5, {0.0, 0.5}, {0.0, 0.0, 0.2}, 0.1}, PeriodicGrid(n));
}

VectorGridFunction test_force(const PeriodicGrid& g) {
  return VectorGridFunction::sample(g, [](double t) { return Vec2(std::cos(2 * t), 1.0 + std::sin(3 * t)); });
}

void BM_SingleLayer(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  const auto f = test_force(c.grid());
  for (auto _ : state) benchmark::DoNotOptimize(potentials::single_layer_on_interface(c, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SingleLayer)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_ApplyL(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  const auto sigma = GridFunction::sample(c.grid(), [](double t) { return std::sin(t) + 0.3 * std::cos(4 * t); });
  for (auto _ : state) benchmark::DoNotOptimize(tension::apply_L(c, sigma));
}
BENCHMARK(BM_ApplyL)->RangeMultiplier(2)->Range(32, 512);

void BM_AssembleL(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tension::assemble_L(c));
}
BENCHMARK(BM_AssembleL)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_SolveTension(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  const ForceDensity f(test_force(c.grid()));
  for (auto _ : state) benchmark::DoNotOptimize(tension::solve_tension(c, f));
}
BENCHMARK(BM_SolveTension)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectra::spectrum(c, 0.1));
}
BENCHMARK(BM_Spectrum)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const std::vector<double> eps{0.005, 0.01, 0.02, 0.04};
  const PerturbationSpec shape{0.5, {0.0, 0.5}, {}, 0.0};
  const SweepOptions opts{static_cast<int>(state.range(0)), 3};
  for (auto _ : state) benchmark::DoNotOptimize(spectra::eigenvalue_sweep(shape, eps, 64, opts));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_VelocityOffCurve(benchmark::State& state) {
  const auto c = test_curve(static_cast<int>(state.range(0)));
  const auto f = test_force(c.grid());
  for (auto _ : state) benchmark::DoNotOptimize(potentials::evaluate_field(c, f, Vec2(2.5, 0.7)));
}
BENCHMARK(BM_VelocityOffCurve)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
