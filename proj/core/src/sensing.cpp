#include "xlayer/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "xlayer/geometry.hpp"
#include "xlayer/interference.hpp"
#include "xlayer/parallel.hpp"
#include "xlayer/random.hpp"

namespace xlayer::sensing {
namespace {

using complex = std::complex<double>;
constexpr complex kJ{0.0, 1.0};

void check_model(const SensingModel& model) {
  if (model.blocks < 1) throw std::invalid_argument("sensing: B must be >= 1");
  if (model.in_cluster_actives < 0) throw std::invalid_argument("sensing: l must be >= 0");
  if (!(model.combined_variance() > 0.0)) throw std::invalid_argument("sensing: sigma_IN^2 must be positive");
}

}  // namespace

complex cf_h0(double omega, const SensingModel& model) {
  const double s2 = model.combined_variance();
  return numerics::continuous_power(complex(1.0, -2.0 * omega * s2), -0.5 * model.blocks);
}

complex signal_expectation(double omega, double signal_scale, double offset, const SignalGeometry& geometry) {
  if (omega == 0.0) return 1.0;
  const double alpha = geometry.path_loss_exponent;
  const double scale = signal_scale * geometry.transmit_power;
  auto integrand = [&](double x) -> complex {
    const double density = geometry::pairwise_distance_pdf(x, geometry.cluster_radius);
    if (density == 0.0) return 0.0;
    const double g = scale * std::pow(x, -alpha) + offset;
    if (!std::isfinite(g)) return 0.0;
    return density / (1.0 - kJ * (omega * g));
  };
  const auto r = numerics::adaptive_quadrature(integrand, 0.0, 2.0 * geometry.cluster_radius,
                                               numerics::Tolerance{1e-14, 1e-11}, 4000);
  if (!r.converged && r.error_estimate > 1e-8)
    throw numerics::NumericalError("sensing: distance expectation did not converge (error " +
                                   std::to_string(r.error_estimate) + ")");
  return r.value;
}

complex cf_h1(double omega, const SensingModel& model, const SignalGeometry& geometry, CfVariant variant) {
  const double s2 = model.combined_variance();
  const int l = model.in_cluster_actives;
  const complex base(1.0, -2.0 * omega * s2);
  if (l == 0) return cf_h0(omega, model);
  if (variant == CfVariant::Derived) {
    const complex e = signal_expectation(omega, 1.0, 2.0 * s2, geometry);
    return std::pow(e, l) * numerics::continuous_power(base, l - 0.5 * model.blocks);
  }
  const complex e = signal_expectation(omega, 0.5, s2, geometry);
  return std::pow(e, l) * numerics::continuous_power(base, 1.0 - 0.5 * model.blocks);
}

double prob_missed_detection(const SensingModel& model, const SignalGeometry& geometry, CfVariant variant,
                             numerics::InversionOptions options) {
  check_model(model);
  if (model.in_cluster_actives < 1) throw std::invalid_argument("sensing: missed detection needs l >= 1");
  return numerics::cf_inversion([&](double w) { return cf_h1(w, model, geometry, variant); }, model.threshold,
                                numerics::Tail::Below, options);
}

double prob_false_alarm(const SensingModel& model, numerics::InversionOptions options) {
  check_model(model);
  return numerics::cf_inversion([&](double w) { return cf_h0(w, model); }, model.threshold, numerics::Tail::Above,
                                options);
}

SensingErrors sensing_errors(const SensingModel& model, const SignalGeometry& geometry, CfVariant variant) {
  return {prob_missed_detection(model, geometry, variant), prob_false_alarm(model)};
}

std::vector<RocPoint> roc_curve(const SensingModel& model, const std::vector<double>& thresholds,
                                const SignalGeometry& geometry, CfVariant variant, unsigned threads) {
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (!(thresholds[i] > thresholds[i - 1])) throw std::invalid_argument("roc_curve: thresholds must increase");
  return parallel_map<RocPoint>(thresholds.size(), threads, [&](std::size_t i) {
    SensingModel m = model;
    m.threshold = thresholds[i];
    return RocPoint{thresholds[i], prob_false_alarm(m), prob_missed_detection(m, geometry, variant)};
  });
}

std::vector<double> threshold_grid(const SensingModel& model, double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  const double scale = model.idle_mean();
  for (std::size_t i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = scale * (lo + (hi - lo) * f);
  }
  return grid;
}

EnergySamples simulate_energies(const SensingModel& model, const SignalGeometry& geometry,
                                const DetectorSimulation& options) {
  check_model(model);
  const double window = geometry::default_window_radius(options.exclusion_distance);
  ClusterTopology topology;
  topology.ap_density = options.ap_density;
  topology.exclusion_distance = options.exclusion_distance;
  topology.cluster_radius = geometry.cluster_radius;
  topology.path_loss_exponent = geometry.path_loss_exponent;

  struct Draw {
    double idle;
    double busy;
  };
  auto draws = parallel_map<Draw>(options.trials, options.threads, [&](std::size_t trial) {
    Rng rng = trial_rng(options.seed, trial, 0x5e45);
    // Sensing node and in-cluster transmitters, fixed over the sensing window.
    const auto sensor = geometry::uniform_in_disk(geometry.cluster_radius, rng);
    const auto actives = geometry::sample_cluster(geometry::CountDistribution::fixed(model.in_cluster_actives),
                                                  geometry.cluster_radius, rng);
    const double signal = interference::received_power(actives, geometry.transmit_power,
                                                       geometry.path_loss_exponent, rng, sensor);
    double interference_power = model.interference_variance;
    if (options.interference == InterferenceMode::PointProcess) {
      const auto others = geometry::sample_ppp_interferers(options.mean_active * options.ap_density,
                                                           options.exclusion_distance, window, rng);
      interference_power = interference::received_power(others, geometry.transmit_power,
                                                        geometry.path_loss_exponent, rng, sensor);
    }
    const double sigma = std::sqrt((interference_power + model.noise_variance) / model.blocks);
    const double amplitude = std::sqrt(signal / model.blocks);
    std::normal_distribution<double> noise(0.0, sigma);
    Draw d{0.0, 0.0};
    for (int b = 0; b < model.blocks; ++b) {
      const double n0 = noise(rng);
      const double n1 = noise(rng);
      d.idle += n0 * n0;
      d.busy += (amplitude + n1) * (amplitude + n1);
    }
    return d;
  });
  EnergySamples out;
  out.idle.reserve(draws.size());
  out.busy.reserve(draws.size());
  for (const auto& d : draws) {
    out.idle.push_back(d.idle);
    out.busy.push_back(d.busy);
  }
  return out;
}

SensingErrors empirical_errors(const EnergySamples& samples, double threshold) {
  const auto above = std::count_if(samples.idle.begin(), samples.idle.end(), [&](double e) { return e > threshold; });
  const auto below = std::count_if(samples.busy.begin(), samples.busy.end(), [&](double e) { return e < threshold; });
  SensingErrors errors;
  errors.false_alarm = samples.idle.empty() ? 0.0 : static_cast<double>(above) / samples.idle.size();
  errors.missed_detection = samples.busy.empty() ? 0.0 : static_cast<double>(below) / samples.busy.size();
  return errors;
}

SensingErrors simulate_detector(const SensingModel& model, const SignalGeometry& geometry,
                                const DetectorSimulation& options) {
  return empirical_errors(simulate_energies(model, geometry, options), model.threshold);
}

}  // namespace xlayer::sensing
