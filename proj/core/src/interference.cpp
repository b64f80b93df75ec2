#include "xlayer/interference.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "xlayer/parallel.hpp"

namespace xlayer::interference {
namespace {

void check_alpha(const ClusterTopology& topology) {
  if (!(topology.path_loss_exponent > 2.0)) throw std::invalid_argument("path loss exponent must exceed 2");
}

}  // namespace

double rayleigh_amplitude_moment(int n) {
  if (n < 0) throw std::invalid_argument("moment order must be non-negative");
  return std::tgamma(1.0 + 0.5 * n);
}

double aggregate_variance(const ClusterTopology& topology, double transmit_power, double mean_active) {
  return interference_cumulant(2, topology, transmit_power, mean_active);
}

InterferenceModel make_model(const ClusterTopology& topology, double transmit_power, double mean_active) {
  InterferenceModel model;
  model.variance = aggregate_variance(topology, transmit_power, mean_active);
  model.active_per_cluster = mean_active;
  return model;
}

double interference_cumulant(int n, const ClusterTopology& topology, double transmit_power, double mean_active) {
  check_alpha(topology);
  const double alpha = topology.path_loss_exponent;
  if (n < 1 || !(n * alpha / 2.0 > 2.0)) throw std::invalid_argument("cumulant order diverges: need n alpha / 2 > 2");
  if (mean_active < 0.0) throw std::invalid_argument("mean active count must be non-negative");
  return std::pow(transmit_power, 0.5 * n) * std::numbers::pi * mean_active * topology.ap_density /
         (n * alpha - 1.0) * std::pow(topology.exclusion_distance, 2.0 - n * alpha / 2.0) *
         rayleigh_amplitude_moment(n);
}

double shot_noise_power_mean(const ClusterTopology& topology, double transmit_power, double mean_active) {
  return shot_noise_power_tail(topology, transmit_power, mean_active, topology.exclusion_distance);
}

double shot_noise_power_tail(const ClusterTopology& topology, double transmit_power, double mean_active,
                             double radius) {
  check_alpha(topology);
  const double alpha = topology.path_loss_exponent;
  return 2.0 * std::numbers::pi * mean_active * topology.ap_density * transmit_power * std::pow(radius, 2.0 - alpha) /
         (alpha - 2.0);
}

double received_power(const geometry::PointSet& points, double transmit_power, double alpha, Rng& rng,
                      geometry::Point at) {
  std::exponential_distribution<double> fading(1.0);
  const double half = 0.5 * alpha;
  double total = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - at.x;
    const double dy = p.y - at.y;
    const double squared = dx * dx + dy * dy;
    const double gain = half == 2.0 ? 1.0 / (squared * squared) : std::pow(squared, -half);
    total += fading(rng) * gain;
  }
  return transmit_power * total;
}

EmpiricalCdf simulate_interference_cdf(Process process, const ClusterTopology& topology, double transmit_power,
                                       double mean_active, const SimulationOptions& options) {
  check_alpha(topology);
  const double window = options.window_radius > 0.0 ? options.window_radius
                                                     : geometry::default_window_radius(topology.exclusion_distance);
  const auto stream = static_cast<std::uint64_t>(process);
  auto samples = parallel_map<double>(options.trials, options.threads, [&](std::size_t trial) {
    Rng rng = trial_rng(options.seed, trial, stream);
    const auto points =
        process == Process::Ppp
            ? geometry::sample_ppp_interferers(mean_active * topology.ap_density, topology.exclusion_distance, window,
                                               rng)
            : geometry::sample_matern_interferers(topology.ap_density, mean_active, topology.cluster_radius, window,
                                                  topology.exclusion_distance, rng, options.matern);
    return received_power(points, transmit_power, topology.path_loss_exponent, rng);
  });
  return EmpiricalCdf(std::move(samples));
}

}  // namespace xlayer::interference
