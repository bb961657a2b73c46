#include <benchmark/benchmark.h>

#include <vector>

#include "xychain/echo.hpp"

namespace {

std::vector<double> grid(int steps, double t_max) {
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
  return t;
}

void run(benchmark::State& state, xychain::Execution exec) {
  const xychain::ChainSpec chain{static_cast<int>(state.range(0)), 1.0};
  const xychain::FieldSet fields(0.5, 1.0, 0.05);
  const auto times = grid(500, 1.0);
  for (auto _ : state) {
    auto s = xychain::coherence_series(chain, fields, xychain::InitialState::ground(), times,
                                       {xychain::UnpairedModes::kExact, exec});
    benchmark::DoNotOptimize(s.f_values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) / 2 * 500);
}

void BM_Serial(benchmark::State& state) { run(state, xychain::Execution::kSerial); }
void BM_Parallel(benchmark::State& state) { run(state, xychain::Execution::kParallel); }

}  // namespace

BENCHMARK(BM_Serial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
