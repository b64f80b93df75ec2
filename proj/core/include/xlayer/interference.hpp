#pragma once

#include <cstddef>
#include <cstdint>

#include "xlayer/geometry.hpp"
#include "xlayer/params.hpp"
#include "xlayer/random.hpp"
#include "xlayer/statistics.hpp"

namespace xlayer::interference {

/// Gaussian model of the out-of-cluster interference amplitude.
struct InterferenceModel {
  double variance = 0.0;              // sigma_I^2
  double mean = 0.0;                  // always zero
  double fading_second_moment = 1.0;  // E|h|^2, Rayleigh
  double active_per_cluster = 1.0;    // mu
};

/// E|h|^n for a Rayleigh amplitude with E|h|^2 = 1: Gamma(1 + n/2).
double rayleigh_amplitude_moment(int n);

/// Variance of the aggregate interference amplitude:
///   P_t * pi mu lambda_h / (2 alpha - 1) * d_min^(2 - alpha) * E|h|^2.
double aggregate_variance(const ClusterTopology& topology, double transmit_power, double mean_active);

InterferenceModel make_model(const ClusterTopology& topology, double transmit_power, double mean_active);

/// n-th cumulant of the interference amplitude:
///   P_t^(n/2) * pi mu lambda_h / (n alpha - 1) * d_min^(2 - n alpha / 2) * E|h|^n.
/// Requires n alpha / 2 > 2. Order 1 is positive, although the Gaussian model uses a zero mean.
double interference_cumulant(int n, const ClusterTopology& topology, double transmit_power, double mean_active);

/// Mean received interference power E[sum P_t |h_j|^2 d_j^-alpha] for a PPP of
/// density mu lambda_h outside b(0, d_min):
///   2 pi mu lambda_h P_t d_min^(2 - alpha) / (alpha - 2).
/// This is also E|I|^2 for the complex amplitude.
double shot_noise_power_mean(const ClusterTopology& topology, double transmit_power, double mean_active);

/// Mean shot-noise power contributed by the part of the PPP beyond `radius`.
double shot_noise_power_tail(const ClusterTopology& topology, double transmit_power, double mean_active,
                             double radius);

/// sum_j P_t |h_j|^2 |x_j - at|^-alpha with |h_j|^2 ~ Exp(1).
double received_power(const geometry::PointSet& points, double transmit_power, double alpha, Rng& rng,
                      geometry::Point at = {});

enum class Process { Matern, Ppp };

struct SimulationOptions {
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  /// Non-positive selects the default window of 50 d_min.
  double window_radius = 0.0;
  geometry::MaternOptions matern{};
};

/// Empirical CDF of the aggregate interference power at the origin.
EmpiricalCdf simulate_interference_cdf(Process process, const ClusterTopology& topology, double transmit_power,
                                       double mean_active, const SimulationOptions& options = {});

}  // namespace xlayer::interference
