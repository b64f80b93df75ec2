#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "xlayer/geometry.hpp"
#include "xlayer/numerics.hpp"
#include "xlayer/statistics.hpp"

using namespace xlayer;
namespace geo = xlayer::geometry;

TEST(Cluster, EmptyWhenFixedZero) {
  Rng rng(1);
  EXPECT_TRUE(geo::sample_cluster(geo::CountDistribution::fixed(0), 100.0, rng).empty());
}

TEST(Cluster, UniformRadialLaw) {
  Rng rng(2);
  const auto pts = geo::sample_cluster(geo::CountDistribution::fixed(100'000), 100.0, rng);
  std::vector<double> r;
  double sum = 0.0;
  for (const auto& p : pts) {
    ASSERT_LE(p.norm(), 100.0);
    r.push_back(p.norm());
    sum += p.norm();
  }
  EXPECT_NEAR(sum / pts.size(), 200.0 / 3.0, 0.5);
  const EmpiricalCdf cdf(r);
  EXPECT_LE(ks_distance(cdf, [](double x) { return geo::radial_cdf(x, 100.0); }), 0.01);
}

TEST(Cluster, PoissonCount) {
  Rng rng(3);
  constexpr int trials = 4000;
  double total = 0.0;
  for (int i = 0; i < trials; ++i) total += geo::sample_cluster(geo::CountDistribution::poisson(32), 100.0, rng).size();
  EXPECT_NEAR(total / trials, 32.0, 3.0 * std::sqrt(32.0 / trials));
}

TEST(Ppp, EmptyAtZeroDensity) {
  Rng rng(4);
  EXPECT_TRUE(geo::sample_ppp_interferers(0.0, 100.0, 5000.0, rng).empty());
}

TEST(Ppp, MeanCountAndSupport) {
  Rng rng(5);
  constexpr int trials = 400;
  const double expected = 1e-4 * std::numbers::pi * (5000.0 * 5000.0 - 100.0 * 100.0);
  double total = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto pts = geo::sample_ppp_interferers(1e-4, 100.0, 5000.0, rng);
    for (const auto& p : pts) {
      ASSERT_GE(p.norm(), 100.0 - 1e-9);
      ASSERT_LE(p.norm(), 5000.0 + 1e-9);
    }
    total += pts.size();
  }
  EXPECT_NEAR(total / trials, expected, 4.0 * std::sqrt(expected / trials));
}

TEST(Ppp, RejectsDegenerateWindow) {
  Rng rng(6);
  EXPECT_THROW(geo::sample_ppp_interferers(1e-4, 100.0, 100.0, rng), std::invalid_argument);
}

TEST(Matern, EmptyAtZeroDensity) {
  Rng rng(7);
  EXPECT_TRUE(geo::sample_matern_interferers(0.0, 1.0, 100.0, 5000.0, 100.0, rng).empty());
}

TEST(Matern, ParentCountFollowsPppMeasure) {
  // With one offspring per parent and no exclusion, the offspring count equals the parent count.
  Rng rng(8);
  constexpr int trials = 400;
  geo::MaternOptions options;
  options.parent_inner_radius = 100.0;
  const double expected = 1e-4 * std::numbers::pi * (5000.0 * 5000.0 - 100.0 * 100.0);
  double total = 0.0;
  for (int i = 0; i < trials; ++i)
    total += geo::sample_matern_interferers(1e-4, 1.0, 100.0, 5000.0, 1e-9, rng, options).size();
  EXPECT_NEAR(total / trials, expected, 4.0 * std::sqrt(expected / trials));
}

TEST(Matern, OffspringRespectExclusion) {
  Rng rng(9);
  const auto pts = geo::sample_matern_interferers(1e-4, 3.0, 100.0, 2000.0, 150.0, rng);
  for (const auto& p : pts) EXPECT_GE(p.norm(), 150.0);
}

TEST(Matern, PoissonOffspringMean) {
  Rng rng(10);
  geo::MaternOptions options;
  options.offspring = geo::CountDistribution::Kind::Poisson;
  options.parent_inner_radius = 0.0;
  constexpr int trials = 300;
  const double parents = 1e-4 * std::numbers::pi * 3000.0 * 3000.0;
  double total = 0.0;
  for (int i = 0; i < trials; ++i)
    total += geo::sample_matern_interferers(1e-4, 2.5, 100.0, 3000.0, 1e-9, rng, options).size();
  // Compound Poisson: variance = parents * (m + m^2).
  EXPECT_NEAR(total / trials, 2.5 * parents, 4.0 * std::sqrt(parents * (2.5 + 6.25) / trials));
}

TEST(PairwiseDistance, Support) {
  EXPECT_EQ(geo::pairwise_distance_pdf(0.0, 100.0), 0.0);
  EXPECT_NEAR(geo::pairwise_distance_pdf(200.0, 100.0), 0.0, 1e-15);
  EXPECT_EQ(geo::pairwise_distance_pdf(250.0, 100.0), 0.0);
}

TEST(PairwiseDistance, Normalised) {
  const auto r = numerics::adaptive_quadrature([](double x) { return geo::pairwise_distance_pdf(x, 100.0); }, 0.0,
                                               200.0, numerics::Tolerance{1e-12, 1e-12});
  EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(PairwiseDistance, MatchesSampledPairs) {
  Rng rng(11);
  std::vector<double> d;
  for (int i = 0; i < 100'000; ++i) d.push_back(geo::distance(geo::uniform_in_disk(100.0, rng), geo::uniform_in_disk(100.0, rng)));
  auto cdf = [](double x) {
    return numerics::adaptive_quadrature([](double u) { return geo::pairwise_distance_pdf(u, 100.0); }, 0.0,
                                         std::min(x, 200.0), numerics::Tolerance{1e-12, 1e-10})
        .value;
  };
  // Mean distance of two uniform points in a unit disk is 128 / (45 pi).
  const EmpiricalCdf e(d);
  EXPECT_NEAR(e.mean(), 100.0 * 128.0 / (45.0 * std::numbers::pi), 0.3);
  EXPECT_LE(ks_distance(e, cdf), 0.01);
}

TEST(OrderedDistance, SingleNodeIsRadialLaw) {
  for (double x : {0.0, 13.0, 50.0, 99.0}) EXPECT_NEAR(geo::ordered_distance_pdf(1, 1, x, 100.0), 2.0 * x / 1e4, 1e-15);
}

TEST(OrderedDistance, Normalised) {
  for (int l = 1; l <= 8; ++l) {
    for (int n = 1; n <= l; ++n) {
      const auto r = numerics::adaptive_quadrature(
          [&](double x) { return geo::ordered_distance_pdf(n, l, x, 100.0); }, 0.0, 100.0,
          numerics::Tolerance{1e-12, 1e-12});
      EXPECT_NEAR(r.value, 1.0, 1e-8) << n << " " << l;
    }
  }
}

TEST(OrderedDistance, RankOutOfRange) {
  EXPECT_THROW(geo::ordered_distance_pdf(0, 3, 1.0, 100.0), std::invalid_argument);
  EXPECT_THROW(geo::ordered_distance_pdf(4, 3, 1.0, 100.0), std::invalid_argument);
}

TEST(OrderedDistance, MinimumOfFiveMatchesSamples) {
  Rng rng(12);
  std::vector<double> mins;
  for (int i = 0; i < 100'000; ++i) {
    const auto d = geo::sample_ordered_distances(5, 100.0, rng);
    ASSERT_TRUE(std::is_sorted(d.begin(), d.end()));
    mins.push_back(d.front());
  }
  // Closed-form CDF of the minimum: 1 - (1 - x^2/d_c^2)^5.
  auto cdf = [](double x) { return 1.0 - std::pow(1.0 - std::min(x * x / 1e4, 1.0), 5); };
  EXPECT_LE(ks_distance(EmpiricalCdf(mins), cdf), 0.02);
}

TEST(OrderedDistance, ClosestIsStrongestWithoutFading) {
  Rng rng(13);
  const auto d = geo::sample_ordered_distances(6, 100.0, rng);
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_GE(std::pow(d[i - 1], -4.0), std::pow(d[i], -4.0));
}
