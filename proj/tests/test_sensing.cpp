#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "xlayer/interference.hpp"
#include "xlayer/sensing.hpp"
#include "xlayer/statistics.hpp"

using namespace xlayer;
namespace xs = xlayer::sensing;

namespace {

double reference_variance(double mu) {
  ClusterTopology t;
  return interference::aggregate_variance(t, 1.0, mu);
}

xs::SensingModel model(int blocks, double mu = 1.0) {
  xs::SensingModel m;
  m.blocks = blocks;
  m.interference_variance = reference_variance(mu);
  m.in_cluster_actives = 1;
  m.threshold = 1.1 * m.idle_mean();
  return m;
}

// Pr[sigma^2 chi^2_B > rho]
double chi_square_tail(const xs::SensingModel& m, double rho) {
  return boost::math::gamma_q(0.5 * m.blocks, rho / (2.0 * m.combined_variance()));
}

std::complex<double> empirical_cf(const std::vector<double>& samples, double w) {
  std::complex<double> sum = 0.0;
  for (double e : samples) sum += std::polar(1.0, w * e);
  return sum / static_cast<double>(samples.size());
}

// Missed detection at a given false-alarm level, by linear interpolation along the curve.
double md_at_fa(const std::vector<xs::RocPoint>& roc, double fa) {
  for (std::size_t i = 1; i < roc.size(); ++i) {
    if (roc[i].false_alarm <= fa && roc[i - 1].false_alarm >= fa) {
      const double w = (roc[i - 1].false_alarm - fa) / (roc[i - 1].false_alarm - roc[i].false_alarm);
      return roc[i - 1].missed_detection + w * (roc[i].missed_detection - roc[i - 1].missed_detection);
    }
  }
  ADD_FAILURE() << "false alarm level " << fa << " not covered";
  return 0.0;
}

}  // namespace

TEST(CfIdle, Origin) { EXPECT_EQ(xs::cf_h0(0.0, model(100)), std::complex<double>(1.0, 0.0)); }

TEST(CfIdle, ConjugateSymmetry) {
  const auto m = model(1000);
  for (double w : {1e3, 1e6, 3e7, 1e9}) {
    const auto a = xs::cf_h0(w, m), b = xs::cf_h0(-w, m);
    EXPECT_NEAR(a.real(), b.real(), 1e-15);
    EXPECT_NEAR(a.imag(), -b.imag(), 1e-15);
  }
}

TEST(CfIdle, TwoBlockModulus) {
  auto m = model(2);
  const double s2 = m.combined_variance();
  for (double w : {0.1 / s2, 1.0 / s2, 7.0 / s2}) EXPECT_NEAR(std::norm(xs::cf_h0(w, m)), 1.0 / (1.0 + 4.0 * w * w * s2 * s2), 1e-14);
}

TEST(CfBusy, OriginAndBound) {
  const auto m = model(100);
  const xs::SignalGeometry g;
  EXPECT_NEAR(std::abs(xs::cf_h1(0.0, m, g) - 1.0), 0.0, 1e-15);
  const double s2 = m.combined_variance();
  for (double w = 0.01 / s2; w < 10.0 / s2; w *= 1.5) EXPECT_LE(std::abs(xs::cf_h1(w, m, g)), 1.0 + 1e-12);
}

TEST(CfBusy, NoTransmitterReducesToIdle) {
  auto m = model(100);
  m.in_cluster_actives = 0;
  const xs::SignalGeometry g;
  for (double w : {1e5, 1e7, 1e9}) EXPECT_EQ(xs::cf_h1(w, m, g), xs::cf_h0(w, m));
}

TEST(CfBusy, DerivedFormMatchesSampleLevelSimulator) {
  auto m = model(100);
  const xs::SignalGeometry g;
  xs::DetectorSimulation sim;
  sim.trials = 100'000;
  sim.seed = 9;
  const auto samples = xs::simulate_energies(m, g, sim);
  const double s2 = m.combined_variance();
  double worst_derived = 0.0, worst_printed = 0.0;
  // Dense near the origin, where the two forms differ, out to 5 / sigma_IN^2.
  for (int k = 0; k <= 60; ++k) {
    const double w = 5.0 / s2 * std::pow(k / 60.0, 4);
    const auto e = empirical_cf(samples.busy, w);
    worst_derived = std::max(worst_derived, std::abs(e - xs::cf_h1(w, m, g, xs::CfVariant::Derived)));
    worst_printed = std::max(worst_printed, std::abs(e - xs::cf_h1(w, m, g, xs::CfVariant::AsPrinted)));
  }
  EXPECT_LE(worst_derived, 0.02);
  EXPECT_GT(worst_printed, 0.05);
}

TEST(CfIdle, MatchesSampleLevelSimulator) {
  const auto m = model(100);
  xs::DetectorSimulation sim;
  sim.trials = 50'000;
  const auto samples = xs::simulate_energies(m, xs::SignalGeometry{}, sim);
  const double s2 = m.combined_variance();
  for (double w : {0.01 / s2, 0.03 / s2, 0.1 / s2}) EXPECT_LE(std::abs(empirical_cf(samples.idle, w) - xs::cf_h0(w, m)), 0.02);
}

TEST(FalseAlarm, MatchesChiSquareTail) {
  for (int blocks : {100, 1000}) {
    auto m = model(blocks);
    for (double f : {0.8, 0.95, 1.0, 1.05, 1.2}) {
      m.threshold = f * m.idle_mean();
      EXPECT_NEAR(xs::prob_false_alarm(m), chi_square_tail(m, m.threshold), 1e-6) << blocks << " " << f;
    }
  }
}

TEST(FalseAlarm, Limits) {
  auto m = model(100);
  m.threshold = 1e-3 * m.idle_mean();
  EXPECT_NEAR(xs::prob_false_alarm(m), 1.0, 1e-9);
}

TEST(MissedDetection, Limits) {
  auto m = model(100);
  const xs::SignalGeometry g;
  m.threshold = 0.2 * m.idle_mean();
  EXPECT_NEAR(xs::prob_missed_detection(m, g), 0.0, 1e-6);
  m.threshold = 3.0 * m.idle_mean();
  const double moderate = xs::prob_missed_detection(m, g);
  m.threshold = 10.0 * m.idle_mean();
  EXPECT_GT(moderate, 0.05);
  EXPECT_GT(xs::prob_missed_detection(m, g), moderate);
}

TEST(MissedDetection, NoiselessDetectionIsPerfect) {
  xs::SensingModel m;
  m.blocks = 10;
  m.interference_variance = 1e-30;
  m.threshold = 1e-20;
  xs::DetectorSimulation sim;
  sim.trials = 5000;
  const auto e = xs::simulate_detector(m, xs::SignalGeometry{}, sim);
  EXPECT_EQ(e.missed_detection, 0.0);
}

TEST(MissedDetection, RequiresTransmitter) {
  auto m = model(100);
  m.in_cluster_actives = 0;
  EXPECT_THROW(xs::prob_missed_detection(m, xs::SignalGeometry{}), std::invalid_argument);
}

TEST(Roc, MonotoneTradeOff) {
  const auto m = model(100);
  const auto grid = xs::threshold_grid(m, 0.7, 1.5, 20);
  const auto roc = xs::roc_curve(m, grid, xs::SignalGeometry{});
  for (std::size_t i = 1; i < roc.size(); ++i) {
    EXPECT_LE(roc[i].false_alarm, roc[i - 1].false_alarm + 1e-9);
    EXPECT_GE(roc[i].missed_detection, roc[i - 1].missed_detection - 1e-9);
  }
}

TEST(Roc, RejectsUnsortedGrid) {
  EXPECT_THROW(xs::roc_curve(model(100), {2.0, 1.0}, xs::SignalGeometry{}), std::invalid_argument);
}

TEST(Roc, LowThresholdEndpointIsCorner) {
  const auto m = model(100);
  const auto roc = xs::roc_curve(m, {0.2 * m.idle_mean(), 3.0 * m.idle_mean()}, xs::SignalGeometry{});
  EXPECT_NEAR(roc.front().false_alarm, 1.0, 1e-6);
  EXPECT_NEAR(roc.front().missed_detection, 0.0, 1e-6);
  EXPECT_NEAR(roc.back().false_alarm, 0.0, 1e-6);
  EXPECT_GT(roc.back().missed_detection, roc.front().missed_detection);
}

TEST(Roc, MoreBlocksDetectBetter) {
  const xs::SignalGeometry g;
  const auto m100 = model(100), m1000 = model(1000);
  const auto a = xs::roc_curve(m100, xs::threshold_grid(m100, 0.5, 1.8, 60), g);
  const auto b = xs::roc_curve(m1000, xs::threshold_grid(m1000, 0.85, 1.25, 60), g);
  for (double fa : {0.02, 0.05, 0.1, 0.2, 0.4}) EXPECT_LT(md_at_fa(b, fa), md_at_fa(a, fa)) << fa;
}

TEST(Roc, MoreInterferenceDetectsWorse) {
  const xs::SignalGeometry g;
  const auto m1 = model(1000, 1.0), m3 = model(1000, 3.0);
  const auto a = xs::roc_curve(m1, xs::threshold_grid(m1, 0.85, 1.25, 60), g);
  const auto b = xs::roc_curve(m3, xs::threshold_grid(m3, 0.85, 1.25, 60), g);
  for (double fa : {0.02, 0.05, 0.1, 0.2, 0.4}) EXPECT_GT(md_at_fa(b, fa), md_at_fa(a, fa)) << fa;
}

TEST(Detector, SimulatorAgreesWithInversion) {
  const auto m = model(100);
  const xs::SignalGeometry g;
  xs::DetectorSimulation sim;
  sim.trials = 20'000;
  sim.seed = 4;
  const auto samples = xs::simulate_energies(m, g, sim);
  for (double rho : xs::threshold_grid(m, 0.8, 1.4, 5)) {
    auto mm = m;
    mm.threshold = rho;
    const auto mc = xs::empirical_errors(samples, rho);
    const double fa = xs::prob_false_alarm(mm), md = xs::prob_missed_detection(mm, g);
    EXPECT_LE(std::abs(mc.false_alarm - fa), 0.01 + 3.0 * binomial_standard_error(fa, sim.trials)) << rho;
    EXPECT_LE(std::abs(mc.missed_detection - md), 0.01 + 3.0 * binomial_standard_error(md, sim.trials)) << rho;
    EXPECT_LE(std::abs(mc.false_alarm - chi_square_tail(m, rho)), 3.0 * binomial_standard_error(fa, sim.trials) + 1e-4);
  }
}

TEST(Detector, IndependentOfThreadCount) {
  const auto m = model(50);
  xs::DetectorSimulation sim;
  sim.trials = 3000;
  sim.threads = 1;
  const auto a = xs::simulate_energies(m, xs::SignalGeometry{}, sim);
  sim.threads = 3;
  const auto b = xs::simulate_energies(m, xs::SignalGeometry{}, sim);
  EXPECT_EQ(a.busy, b.busy);
  EXPECT_EQ(a.idle, b.idle);
}

TEST(Model, CombinedVarianceAndTiming) {
  xs::SensingModel m;
  m.blocks = 40;
  m.interference_variance = 3.0;
  m.noise_variance = 1.0;
  m.nyquist_rate = 8.0;
  EXPECT_DOUBLE_EQ(m.combined_variance(), 0.1);
  EXPECT_DOUBLE_EQ(m.sensing_time(64), 40.0 * 64.0 / 8.0);
}
