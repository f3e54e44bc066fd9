#include <benchmark/benchmark.h>

#include "hnls/line_solver.hpp"
#include "hnls/torus_solver.hpp"

using namespace hnls;

namespace {

ComplexField carrier(std::size_t n) {
  return ComplexField::sample(TorusGrid(n), [](double x) {
    return std::polar(1.0, x) + std::polar(0.5, -2.0 * x);
  });
}

void BM_StrangStepTorus(benchmark::State& state) {
  const Power p(static_cast<double>(state.range(1)));
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.dealias = !p.is_odd_integer();
  TorusState s{0.0, carrier(static_cast<std::size_t>(state.range(0)))};
  for (auto _ : state) s = strang_step_torus(s, cfg, p);
  benchmark::DoNotOptimize(s.w);
}
BENCHMARK(BM_StrangStepTorus)->Args({256, 3})->Args({256, 4})->Args({1024, 3});

void BM_CoupledStep(benchmark::State& state) {
  const Power p(3);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const LineGrid line(static_cast<std::size_t>(state.range(0)), 32);
  const auto v0 = ComplexField::sample(line, [](double x) { return Complex(std::exp(-x * x / 2)); });
  const auto w0 = carrier(128);
  // Ten coupled steps per iteration.
  for (auto _ : state) benchmark::DoNotOptimize(evolve_coupled(v0, w0, 10 * cfg.dt, cfg, p));
}
BENCHMARK(BM_CoupledStep)->Arg(8192)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_PicardTorus(benchmark::State& state) {
  const Power p(3);
  StepperConfig cfg;
  const auto w0 = carrier(128);
  const double horizon = 0.5 * guaranteed_time_torus(w0, p);
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve_torus(w0, horizon, cfg, p));
}
BENCHMARK(BM_PicardTorus)->Unit(benchmark::kMillisecond);

}  // namespace
