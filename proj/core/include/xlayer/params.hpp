#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xlayer {

/// Geometry of a cluster and of the surrounding network.
struct ClusterTopology {
  double ap_density = 1.0 / (std::numbers::pi * 4.0 * 100.0 * 100.0);  // lambda_h
  double cluster_radius = 100.0;                                       // d_c
  double exclusion_distance = 100.0;                                   // d_min
  double path_loss_exponent = 4.0;                                     // alpha
  int mean_nodes = 32;                                                 // M
  int subcarriers = 64;                                                // N

  /// In-cluster node density M / (pi d_c^2).
  double node_density() const { return mean_nodes / (std::numbers::pi * cluster_radius * cluster_radius); }

  /// Default AP density: one AP per four cluster areas.
  static double default_ap_density(double cluster_radius) {
    return 1.0 / (std::numbers::pi * 4.0 * cluster_radius * cluster_radius);
  }
};

struct PowerTimingProfile {
  double transmit_power = 1.0;   // P_t, per subcarrier
  double sensing_power = 1e-2;   // P_s
  double decoding_power = 1e-2;  // P_d
  double control_power = 1.0;    // polling overhead of the centralized scheme
  double slot_duration = 1.0;    // T
  double sensing_time = 0.1;     // T_s
};

struct MacConfig {
  double access_probability = 0.05;  // p
  int max_subcarriers = 3;           // s
  int contention_slots = 60;         // k_c
  int frame_slots = 60;              // k_f

  int contention_free_slots() const { return frame_slots - contention_slots; }
};

/// Bits per second per hertz credited to one successful decode at threshold zeta.
using SpectralGain = std::function<double(double)>;

inline double shannon_gain(double zeta) { return std::log2(1.0 + zeta); }

struct DecodingConfig {
  double threshold = 3.1622776601683795;  // zeta, linear (5 dB)
  SpectralGain spectral_gain = shannon_gain;

  double gain() const { return spectral_gain(threshold); }
};

enum class SchemeKind { Hybrid, Centralized, Distributed };

std::string_view to_string(SchemeKind kind);

/// Probabilities of sensing a busy subcarrier as free and a free one as busy.
struct SensingErrors {
  double missed_detection = 0.01;
  double false_alarm = 0.01;
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<Violation> warnings;

  bool ok() const { return errors.empty(); }
  /// All errors joined into one line, for exception messages.
  std::string summary() const;
};

struct ParameterBundle {
  ClusterTopology topology;
  PowerTimingProfile power;
  MacConfig mac;
  DecodingConfig decoding;
  SensingErrors sensing;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate(const ClusterTopology& topology);
ValidationReport validate(const PowerTimingProfile& power);
ValidationReport validate(const MacConfig& mac);
ValidationReport validate(const DecodingConfig& decoding);
ValidationReport validate(const SensingErrors& errors);
ValidationReport validate(const ParameterBundle& bundle);

/// Returns the bundle unchanged if it is valid, otherwise throws ValidationError.
const ParameterBundle& require_valid(const ParameterBundle& bundle);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace xlayer
