#include <benchmark/benchmark.h>

#include "aisdb/kernels.hpp"
#include "aisdb/synth.hpp"

using namespace aisdb;
using kernels::Execution;

namespace {

const std::vector<Track>& corpus() {
  static const std::vector<Track> tracks = [] {
    std::vector<Track> out;
    for (std::size_t i = 0; i < 100; ++i) {
      ScenarioTrack sc;
      sc.spec.kind = i % 2 ? SynthKind::Arc : SynthKind::Linear;
      sc.spec.turn_rate_deg = 0.1;
      sc.spec.length_minutes = 2000;
      sc.spec.seed = i;
      sc.spec.mmsi = static_cast<Mmsi>(100000000 + i);
      sc.spikes = {{200, 80}};
      sc.gaps = {{500, 8}, {1500, 12}};
      out.push_back(build_scenario_track(sc));
    }
    return out;
  }();
  return tracks;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Screen(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::screen_all(corpus(), ScreenConfig{}, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

void BM_Clean(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::clean_all(corpus(), CleanConfig{}, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().size()));
}

void BM_Summarize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::summarize_all(corpus(), {}, 50, mode(state)));
}

void BM_Evaluate(benchmark::State& state) {
  SynthSpec spec;
  spec.kind = SynthKind::Arc;
  spec.length_minutes = 400;
  const auto track = generate(spec);
  EvalConfig cfg;
  cfg.stride = 5;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_track(track, cfg, mode(state)));
}

}  // namespace

BENCHMARK(BM_Screen)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Clean)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Summarize)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
