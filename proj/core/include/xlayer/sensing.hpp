#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "xlayer/numerics.hpp"
#include "xlayer/params.hpp"

namespace xlayer::sensing {

/// Energy detector on one subcarrier.
///
/// The decision statistic is E = sum_{b=1}^{B} (S + N_b)^2 over B real blocks,
/// with N_b ~ N(0, sigma_IN^2) and B S^2 = sum_i P_t |h_i|^2 d_i^-alpha, so the
/// threshold is in units of that sum.
struct SensingModel {
  int blocks = 1000;                  // B
  double threshold = 1.0;             // rho
  double noise_variance = 0.0;        // sigma_w^2
  double interference_variance = 0.0; // sigma_I^2
  int in_cluster_actives = 1;         // l
  double nyquist_rate = 1.0;          // R_N, samples per second

  /// sigma_IN^2 = (sigma_I^2 + sigma_w^2) / B.
  double combined_variance() const { return (interference_variance + noise_variance) / blocks; }
  /// Mean of E under the idle hypothesis, B sigma_IN^2.
  double idle_mean() const { return blocks * combined_variance(); }
  /// T_s = B N / R_N.
  double sensing_time(int subcarriers) const { return blocks * static_cast<double>(subcarriers) / nyquist_rate; }
};

/// Which closed form to use for the characteristic function under H1.
///
/// Derived averages the non-central chi-square CF over Rayleigh fading:
///   E_d[1 / (1 - j w (P_t d^-alpha + 2 sigma^2))]^l (1 - 2 j w sigma^2)^(l - B/2).
/// AsPrinted halves the signal term, drops the factor 2 on sigma^2 and uses
/// the exponent -(B/2 - 1) regardless of l; it does not reduce to the idle CF
/// and disagrees with the sample-level simulator.
enum class CfVariant { Derived, AsPrinted };

struct SignalGeometry {
  double cluster_radius = 100.0;
  double path_loss_exponent = 4.0;
  double transmit_power = 1.0;
};

/// (1 - 2 j w sigma_IN^2)^(-B/2).
std::complex<double> cf_h0(double omega, const SensingModel& model);

/// CF of E with l active in-cluster transmitters at distances drawn from the
/// pairwise-distance density of the cluster disk.
std::complex<double> cf_h1(double omega, const SensingModel& model, const SignalGeometry& geometry,
                           CfVariant variant = CfVariant::Derived);

/// E_d[1 / (1 - j w (a P_t d^-alpha + c))] over the pairwise-distance density.
std::complex<double> signal_expectation(double omega, double signal_scale, double offset,
                                        const SignalGeometry& geometry);

double prob_missed_detection(const SensingModel& model, const SignalGeometry& geometry,
                             CfVariant variant = CfVariant::Derived, numerics::InversionOptions options = {});

double prob_false_alarm(const SensingModel& model, numerics::InversionOptions options = {});

SensingErrors sensing_errors(const SensingModel& model, const SignalGeometry& geometry,
                             CfVariant variant = CfVariant::Derived);

struct RocPoint {
  double threshold = 0.0;
  double false_alarm = 0.0;
  double missed_detection = 0.0;
};

/// Analytic (P_fa, P_md) along a strictly increasing threshold grid.
std::vector<RocPoint> roc_curve(const SensingModel& model, const std::vector<double>& thresholds,
                                const SignalGeometry& geometry, CfVariant variant = CfVariant::Derived,
                                unsigned threads = 0);

/// Evenly spaced thresholds in [lo, hi] times the idle mean B sigma_IN^2.
std::vector<double> threshold_grid(const SensingModel& model, double lo, double hi, std::size_t count);

enum class InterferenceMode {
  /// Blocks carry Gaussian interference of variance sigma_I^2 / B.
  Gaussian,
  /// Each trial draws a PPP of interferers of density mu lambda_h outside
  /// d_min and uses its realised power in place of sigma_I^2.
  PointProcess,
};

struct DetectorSimulation {
  std::size_t trials = 10'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  InterferenceMode interference = InterferenceMode::Gaussian;
  /// Used only by InterferenceMode::PointProcess.
  double ap_density = 0.0;
  double mean_active = 1.0;
  double exclusion_distance = 100.0;
};

/// Sample-level draws of the decision statistic under both hypotheses.
struct EnergySamples {
  std::vector<double> idle;  // H0
  std::vector<double> busy;  // H1
};

EnergySamples simulate_energies(const SensingModel& model, const SignalGeometry& geometry,
                                const DetectorSimulation& options = {});

/// Empirical error rates of thresholding `samples` at `threshold`.
SensingErrors empirical_errors(const EnergySamples& samples, double threshold);

/// Empirical errors at the model threshold.
SensingErrors simulate_detector(const SensingModel& model, const SignalGeometry& geometry,
                                const DetectorSimulation& options = {});

}  // namespace xlayer::sensing
