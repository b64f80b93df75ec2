#include <benchmark/benchmark.h>

#include "xlayer/efficiency.hpp"
#include "xlayer/interference.hpp"
#include "xlayer/mac.hpp"
#include "xlayer/numerics.hpp"
#include "xlayer/sensing.hpp"
#include "xlayer/sic.hpp"

using namespace xlayer;

static void BM_Gauss2F1(benchmark::State& state) {
  const double z = -std::pow(10.0, static_cast<double>(state.range(0)) / 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(numerics::gauss_2f1_family(3.5, z));
}
BENCHMARK(BM_Gauss2F1)->DenseRange(-4, 4, 2);

static void BM_FalseAlarmInversion(benchmark::State& state) {
  sensing::SensingModel m;
  m.blocks = static_cast<int>(state.range(0));
  m.interference_variance = 1.0;
  m.threshold = 1.1 * m.idle_mean();
  for (auto _ : state) benchmark::DoNotOptimize(sensing::prob_false_alarm(m));
}
BENCHMARK(BM_FalseAlarmInversion)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MissedDetectionInversion(benchmark::State& state) {
  sensing::SensingModel m;
  m.blocks = static_cast<int>(state.range(0));
  m.interference_variance = interference::aggregate_variance(ClusterTopology{}, 1.0, 1.0);
  m.threshold = 1.1 * m.idle_mean();
  for (auto _ : state) benchmark::DoNotOptimize(sensing::prob_missed_detection(m, sensing::SignalGeometry{}));
}
BENCHMARK(BM_MissedDetectionInversion)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_DecodeProbability(benchmark::State& state) {
  sic::SicScenario s;
  s.colliders = static_cast<int>(state.range(0));
  s.threshold = db_to_linear(5.0);
  const auto method = state.range(1) ? sic::Method::General : sic::Method::ClosedForm4;
  for (auto _ : state) benchmark::DoNotOptimize(sic::p_dec(1, s, method));
}
BENCHMARK(BM_DecodeProbability)->ArgsProduct({{2, 5, 10}, {0, 1}})->Unit(benchmark::kMicrosecond);

static void BM_OccupancyDistribution(benchmark::State& state) {
  MacConfig m;
  m.contention_slots = static_cast<int>(state.range(0));
  m.frame_slots = 60;
  for (auto _ : state) benchmark::DoNotOptimize(mac::occupancy_distribution(m, 32, 64, SensingErrors{}));
}
BENCHMARK(BM_OccupancyDistribution)->Arg(10)->Arg(60)->Unit(benchmark::kMicrosecond);

static void BM_EvaluateSchemes(benchmark::State& state) {
  ParameterBundle b;
  efficiency::EfficiencyOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(efficiency::evaluate_schemes(b, o));
}
BENCHMARK(BM_EvaluateSchemes)->Unit(benchmark::kMillisecond);

static void BM_EvaluateSchemesCached(benchmark::State& state) {
  ParameterBundle b;
  efficiency::EfficiencyOptions o;
  o.threads = 1;
  efficiency::DecodeFamilyCache cache;
  efficiency::evaluate_schemes(b, o, &cache);
  for (auto _ : state) benchmark::DoNotOptimize(efficiency::evaluate_schemes(b, o, &cache));
}
BENCHMARK(BM_EvaluateSchemesCached)->Unit(benchmark::kMicrosecond);
