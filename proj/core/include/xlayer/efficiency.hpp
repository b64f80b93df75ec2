#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "xlayer/mac.hpp"
#include "xlayer/params.hpp"
#include "xlayer/sic.hpp"

namespace xlayer::efficiency {

/// Energy, throughput and efficiency of one scheme, per subcarrier per slot.
struct SchemeReport {
  SchemeKind scheme = SchemeKind::Hybrid;
  double sensing_energy = 0.0;
  double transmission_energy = 0.0;
  double decoding_energy = 0.0;
  double control_energy = 0.0;
  double throughput = 0.0;  // bits
  double efficiency = 0.0;  // bits per joule

  double total_energy() const { return sensing_energy + transmission_energy + decoding_energy + control_energy; }
};

/// Decode-count distributions for l = 1..M at one threshold.
class DecodeFamily {
 public:
  DecodeFamily() = default;
  explicit DecodeFamily(std::vector<std::vector<double>> counts);

  int max_colliders() const { return static_cast<int>(counts_.size()); }
  /// Probability of decoding exactly i of l transmissions.
  double probability(int i, int l) const { return counts_.at(l - 1).at(i); }
  /// Expected decode attempts sum_i (i + 1) D_{i,l}; zero for l = 0.
  double attempts(int l) const { return l == 0 ? 0.0 : attempts_.at(l - 1); }
  /// Expected successes sum_i i D_{i,l}.
  double successes(int l) const { return l == 0 ? 0.0 : successes_.at(l - 1); }
  /// D_{1,l}, the chance that exactly one transmission is decoded.
  double single(int l) const { return l == 0 ? 0.0 : counts_.at(l - 1).at(1); }
  const std::vector<std::vector<double>>& counts() const { return counts_; }

 private:
  std::vector<std::vector<double>> counts_;
  std::vector<double> attempts_;
  std::vector<double> successes_;
};

struct EfficiencyOptions {
  /// Mean active transmitters per neighbouring cluster used for the SIC interference term.
  double sic_mean_active = 1.0;
  sic::Method method = sic::Method::Auto;
  unsigned threads = 0;
};

/// SIC scenario for the bundle, with sigma_I^2 evaluated at unit transmit power.
sic::SicScenario sic_scenario(const ParameterBundle& bundle, int colliders, const EfficiencyOptions& options = {});

/// Memoises decode families per (threshold, sigma_I^2, d_c, alpha, M). Thread-safe.
class DecodeFamilyCache {
 public:
  std::shared_ptr<const DecodeFamily> get(const ParameterBundle& bundle, const EfficiencyOptions& options = {});
  std::size_t size() const;

 private:
  using Key = std::tuple<double, double, double, double, int, int>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const DecodeFamily>> entries_;
};

DecodeFamily decode_family(const ParameterBundle& bundle, const EfficiencyOptions& options = {});

/// Weight of each state l in the frame: sum over contention slots of the
/// in-use state probability, plus k_d times that of the last contention slot.
std::vector<double> state_weights(const mac::OccupancyDistribution& occupancy, const MacConfig& mac);

/// (P_d T / k_f) sum_l w_l sum_i (i + 1) D_{i,l}.
double decoding_energy(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                       const PowerTimingProfile& power, const MacConfig& mac);

/// (chi T / k_f) sum_l w_l sum_i i D_{i,l}.
double hybrid_throughput(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                         const DecodingConfig& decoding, const MacConfig& mac, double slot_duration);

/// (chi T / k_f) sum_l w_l D_{1,l}.
double distributed_throughput(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                              const DecodingConfig& decoding, const MacConfig& mac, double slot_duration);

/// Fills `efficiency` from the energy terms and throughput; zero when both are zero.
SchemeReport finish(SchemeReport report);

SchemeReport hybrid_efficiency(const ParameterBundle& bundle, const mac::OccupancyDistribution& occupancy,
                               const DecodeFamily& family);
SchemeReport distributed_efficiency(const ParameterBundle& bundle, const mac::OccupancyDistribution& occupancy,
                                    const DecodeFamily& family);
/// Centralized polling: one scheduled transmission per subcarrier, decoded with probability D_{1,1}.
SchemeReport centralized_efficiency(const PowerTimingProfile& power, const DecodingConfig& decoding,
                                    double single_decode);

struct SchemeComparison {
  double value = 0.0;  // sweep variable
  SchemeReport hybrid;
  SchemeReport centralized;
  SchemeReport distributed;
};

/// All three schemes for one bundle.
SchemeComparison evaluate_schemes(const ParameterBundle& bundle, const EfficiencyOptions& options = {},
                                  DecodeFamilyCache* cache = nullptr);

enum class SweepVariable { Threshold, DecodingPower, ControlPower, AccessProbability, ContentionSlots };

/// Evaluates the schemes at each value of the sweep variable (linear units;
/// contention slots are rounded to the nearest integer).
std::vector<SchemeComparison> compare_schemes(const ParameterBundle& bundle, SweepVariable variable,
                                              const std::vector<double>& values,
                                              const EfficiencyOptions& options = {});

/// Maximiser of the hybrid efficiency over thresholds in [lo_db, hi_db] dB,
/// by golden-section search after a coarse scan.
double hybrid_argmax_db(const ParameterBundle& bundle, double lo_db, double hi_db,
                        const EfficiencyOptions& options = {});

struct ComposedSimulation {
  std::size_t frames = 4000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  sic::Ordering ordering = sic::Ordering::Power;
};

struct ComposedResult {
  SchemeReport hybrid;
  SchemeReport distributed;
  double mean_attempts = 0.0;   // per occupied subcarrier-slot
  double mean_successes = 0.0;  // per occupied subcarrier-slot
};

/// Slot-level MAC feeding per-subcarrier SIC draws, with energy metering.
///
/// A subcarrier's colliders keep their positions and fading until another
/// node joins, at which point a fresh SIC draw is made for the new set. Each
/// occupied subcarrier-slot costs (decoded + 1) attempts.
ComposedResult simulate_composed(const ParameterBundle& bundle, const ComposedSimulation& simulation = {},
                                 const EfficiencyOptions& options = {});

}  // namespace xlayer::efficiency
