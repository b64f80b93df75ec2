#include <benchmark/benchmark.h>

#include "xlayer/efficiency.hpp"
#include "xlayer/interference.hpp"
#include "xlayer/mac.hpp"
#include "xlayer/sensing.hpp"
#include "xlayer/sic.hpp"

using namespace xlayer;

static void BM_InterferenceTrials(benchmark::State& state) {
  const auto process = state.range(0) ? interference::Process::Matern : interference::Process::Ppp;
  interference::SimulationOptions o;
  o.trials = 1000;
  o.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(interference::simulate_interference_cdf(process, ClusterTopology{}, 1.0, 1.0, o));
  state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_InterferenceTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_DetectorTrials(benchmark::State& state) {
  sensing::SensingModel m;
  m.blocks = static_cast<int>(state.range(0));
  m.interference_variance = 1e-9;
  sensing::DetectorSimulation sim;
  sim.trials = 1000;
  sim.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sensing::simulate_energies(m, sensing::SignalGeometry{}, sim));
  state.SetItemsProcessed(state.iterations() * sim.trials);
}
BENCHMARK(BM_DetectorTrials)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MacFrames(benchmark::State& state) {
  MacConfig m;
  m.max_subcarriers = static_cast<int>(state.range(0));
  mac::MacSimulation sim;
  sim.frames = 1000;
  sim.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(mac::simulate_mac(m, 32, 64, SensingErrors{}, PowerTimingProfile{}, sim));
  state.SetItemsProcessed(state.iterations() * sim.frames);
}
BENCHMARK(BM_MacFrames)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SicTrials(benchmark::State& state) {
  sic::SicScenario s;
  s.colliders = static_cast<int>(state.range(0));
  sic::SicSimulation sim;
  sim.trials = 10'000;
  sim.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sic::simulate_sic(s, sim));
  state.SetItemsProcessed(state.iterations() * sim.trials);
}
BENCHMARK(BM_SicTrials)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ComposedFrames(benchmark::State& state) {
  ParameterBundle b;
  efficiency::ComposedSimulation sim;
  sim.frames = 500;
  sim.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(efficiency::simulate_composed(b, sim));
  state.SetItemsProcessed(state.iterations() * sim.frames);
}
BENCHMARK(BM_ComposedFrames)->Unit(benchmark::kMillisecond);

static void BM_ParallelScaling(benchmark::State& state) {
  sic::SicScenario s;
  sic::SicSimulation sim;
  sim.trials = 20'000;
  sim.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sic::simulate_sic(s, sim));
}
BENCHMARK(BM_ParallelScaling)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
