#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "wavebreak/characteristics.hpp"
#include "wavebreak/evolve.hpp"
#include "wavebreak/kernel.hpp"
#include "wavebreak/profiles.hpp"

using namespace wavebreak;

namespace {

Field bump(const Grid& g) {
  return Field::sample(g, [](double x) { return std::exp(-x * x) * std::sin(x); });
}

void BM_Derivative(benchmark::State& state) {
  const Grid g = Grid::make(static_cast<std::size_t>(state.range(0)), 20.0);
  const Field u = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(derivative(u, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_StepperAdvance(benchmark::State& state) {
  const Grid g = Grid::make(static_cast<std::size_t>(state.range(0)), 20.0);
  Stepper st(ModelSpec::make(Family::whitham), g);
  const Field u = bump(g);
  std::vector<Complex> c(u.coefficients().begin(), u.coefficients().end());
  for (auto _ : state) {
    st.advance(c, 1e-4);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StepperAdvance)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_KernelTable(benchmark::State& state) {
  const std::vector<double> xs = hur_abscissae(1.0, 1.0, 64, static_cast<std::size_t>(state.range(0)));
  const ModelSpec w = ModelSpec::make(Family::whitham);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_table(w, xs));
  state.counters["abscissae"] = static_cast<double>(xs.size());
}
BENCHMARK(BM_KernelTable)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Advect(benchmark::State& state) {
  const Grid g = Grid::make(1024, 10.0);
  ProfileSpec spec;
  spec.family = "odd_ramp";
  RunParams p;
  p.final_time = 0.5;
  p.snapshot_interval = 0.01;
  const Field phi = make_profile(g, spec);
  const RunResult r = run(ModelSpec::make(Family::burgers_hilbert), phi, p);
  const auto seeds = default_seeds(phi, 0.1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(advect(r, seeds));
  state.counters["seeds"] = static_cast<double>(seeds.size());
  state.counters["snapshots"] = static_cast<double>(r.snapshots.size());
}
BENCHMARK(BM_Advect)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
