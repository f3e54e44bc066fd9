#include <benchmark/benchmark.h>

#include "hnls/estimates.hpp"

using namespace hnls;

namespace {

void BM_SamplerDraw(benchmark::State& state) {
  const FieldSampler sampler(1, TorusGrid(static_cast<std::size_t>(state.range(0))), 2.0);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(i++, 0));
}
BENCHMARK(BM_SamplerDraw)->Arg(64)->Arg(1024);

void BM_TaylorLab(benchmark::State& state) {
  const FieldSampler sampler(1, TorusGrid(64), 2.0);
  LabOptions opts;
  opts.samples = 256;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_taylor_lemma(sampler, Power(3.5), opts));
}
BENCHMARK(BM_TaylorLab)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_InterpolationLab(benchmark::State& state) {
  const FieldSampler sampler(1, TorusGrid(64), 2.0);
  LabOptions opts;
  opts.samples = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(verify_interpolation(sampler, Power(3), 3.0, opts));
}
BENCHMARK(BM_InterpolationLab)->Unit(benchmark::kMillisecond);

}  // namespace
