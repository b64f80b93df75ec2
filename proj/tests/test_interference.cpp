#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xlayer/interference.hpp"

using namespace xlayer;
namespace xi = xlayer::interference;

namespace {

ClusterTopology topology(double ap_density = 1e-4) {
  ClusterTopology t;
  t.ap_density = ap_density;
  t.cluster_radius = 100.0;
  t.exclusion_distance = 100.0;
  t.path_loss_exponent = 4.0;
  return t;
}

}  // namespace

TEST(AggregateVariance, ZeroWithoutActiveNodes) { EXPECT_EQ(xi::aggregate_variance(topology(), 1.0, 0.0), 0.0); }

TEST(AggregateVariance, ReferenceValue) {
  EXPECT_NEAR(xi::aggregate_variance(topology(), 1.0, 1.0), std::numbers::pi * 1e-4 / 7.0 * 1e-4, 1e-22);
  EXPECT_NEAR(xi::aggregate_variance(topology(), 1.0, 1.0), 4.488e-9, 1e-12);
}

TEST(AggregateVariance, LinearInTransmitPower) {
  const auto t = topology();
  EXPECT_DOUBLE_EQ(xi::aggregate_variance(t, 2.0, 1.3), 2.0 * xi::aggregate_variance(t, 1.0, 1.3));
}

TEST(AggregateVariance, RejectsShallowPathLoss) {
  auto t = topology();
  t.path_loss_exponent = 2.0;
  EXPECT_THROW(xi::aggregate_variance(t, 1.0, 1.0), std::invalid_argument);
}

TEST(Model, ZeroMean) {
  const auto m = xi::make_model(topology(), 1.0, 2.0);
  EXPECT_EQ(m.mean, 0.0);
  EXPECT_EQ(m.fading_second_moment, 1.0);
  EXPECT_GT(m.variance, 0.0);
}

TEST(Cumulant, SecondOrderIsVariance) {
  const auto t = topology();
  EXPECT_DOUBLE_EQ(xi::interference_cumulant(2, t, 1.7, 2.0), xi::aggregate_variance(t, 1.7, 2.0));
}

TEST(Cumulant, FirstOrderNeedsFastDecay) {
  auto t = topology();
  EXPECT_THROW(xi::interference_cumulant(1, t, 1.0, 1.0), std::invalid_argument);
  t.path_loss_exponent = 5.0;
  EXPECT_GT(xi::interference_cumulant(1, t, 1.0, 1.0), 0.0);
}

TEST(Cumulant, VanishesWithExclusionDistance) {
  auto t = topology();
  const double first = xi::interference_cumulant(3, t, 1.0, 1.0);
  double last = first;
  for (double d : {1e3, 1e4, 1e5}) {
    t.exclusion_distance = d;
    const double k = xi::interference_cumulant(3, t, 1.0, 1.0);
    EXPECT_LT(k, last);
    last = k;
  }
  EXPECT_LT(last, 1e-11 * first);
}

TEST(Cumulant, DivergentOrderRejected) {
  auto t = topology();
  t.path_loss_exponent = 3.0;
  EXPECT_THROW(xi::interference_cumulant(1, t, 1.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(xi::interference_cumulant(2, t, 1.0, 1.0));
}

TEST(RayleighMoments, ClosedForm) {
  EXPECT_NEAR(xi::rayleigh_amplitude_moment(1), std::sqrt(std::numbers::pi) / 2.0, 1e-15);
  EXPECT_NEAR(xi::rayleigh_amplitude_moment(2), 1.0, 1e-15);
  EXPECT_NEAR(xi::rayleigh_amplitude_moment(4), 2.0, 1e-15);
}

TEST(ShotNoise, CampbellMeanMatchesSimulation) {
  const auto t = topology();
  xi::SimulationOptions o;
  o.trials = 20'000;
  o.seed = 21;
  const auto cdf = xi::simulate_interference_cdf(xi::Process::Ppp, t, 1.0, 1.0, o);
  const double window = 50.0 * t.exclusion_distance;
  const double expected = xi::shot_noise_power_mean(t, 1.0, 1.0) - xi::shot_noise_power_tail(t, 1.0, 1.0, window);
  const double se = std::sqrt(cdf.variance() / cdf.size());
  EXPECT_NEAR(cdf.mean(), expected, 3.0 * se);
}

TEST(ShotNoise, CampbellExceedsClosedFormVariance) {
  // The cumulant-matched variance is a fixed fraction (alpha - 2) / (2 (2 alpha - 1))
  // of the mean shot-noise power: 1/7 at alpha = 4.
  auto t = topology();
  for (double alpha : {3.0, 4.0, 5.0}) {
    t.path_loss_exponent = alpha;
    const double ratio = xi::shot_noise_power_mean(t, 1.0, 1.0) / xi::aggregate_variance(t, 1.0, 1.0);
    EXPECT_NEAR(ratio, 2.0 * (2.0 * alpha - 1.0) / (alpha - 2.0), 1e-12) << alpha;
  }
}

TEST(ShotNoise, DefaultWindowTruncationIsSmall) {
  const auto t = topology();
  const double tail = xi::shot_noise_power_tail(t, 1.0, 1.0, 50.0 * t.exclusion_distance);
  EXPECT_LT(tail / xi::shot_noise_power_mean(t, 1.0, 1.0), 1e-3);
}

TEST(Simulation, NoActiveNodesGivesZeroInterference) {
  xi::SimulationOptions o;
  o.trials = 1000;
  for (auto p : {xi::Process::Ppp, xi::Process::Matern}) {
    const auto cdf = xi::simulate_interference_cdf(p, topology(), 1.0, 0.0, o);
    EXPECT_EQ(cdf.quantile(1.0), 0.0);
  }
}

TEST(Simulation, IndependentOfThreadCount) {
  xi::SimulationOptions o;
  o.trials = 2000;
  o.seed = 5;
  o.threads = 1;
  const auto a = xi::simulate_interference_cdf(xi::Process::Matern, topology(), 1.0, 2.0, o);
  o.threads = 4;
  const auto b = xi::simulate_interference_cdf(xi::Process::Matern, topology(), 1.0, 2.0, o);
  EXPECT_EQ(a.samples(), b.samples());
}

TEST(Simulation, MaternPppGapGrowsWithClusterLoad) {
  const auto t = topology(ClusterTopology::default_ap_density(100.0));
  xi::SimulationOptions o;
  o.trials = 10'000;
  o.seed = 77;
  double last = -1.0;
  for (double mu : {1.0, 2.0, 3.0}) {
    const auto m = xi::simulate_interference_cdf(xi::Process::Matern, t, 1.0, mu, o);
    const auto p = xi::simulate_interference_cdf(xi::Process::Ppp, t, 1.0, mu, o);
    const double ks = ks_distance(m, p);
    EXPECT_GE(ks, last) << mu;
    last = ks;
  }
}
