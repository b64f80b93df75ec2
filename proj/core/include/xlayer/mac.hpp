#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "xlayer/params.hpp"
#include "xlayer/random.hpp"

namespace xlayer::mac {

/// Mean-field state of the contention period. Index k holds slot k + 1.
struct MacTrajectory {
  std::vector<double> inactive_nodes;    // M_i, slots 1..k_c+1
  std::vector<double> free_subcarriers;  // N_f, slots 1..k_c+1
  std::vector<double> sensed_free;       // N^_f, slots 1..k_c
  std::vector<double> selection;         // xi, slots 1..k_c

  int contention_slots() const { return static_cast<int>(selection.size()); }
};

MacTrajectory evolve_mean_field(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors);

/// Nearest integer with ties to even, floored at zero.
int rounded_count(double value);

/// Square matrix over subcarrier states 0..M (number of nodes on the subcarrier).
struct TransitionMatrix {
  int states = 0;
  std::vector<double> values;

  TransitionMatrix() = default;
  explicit TransitionMatrix(int n) : states(n), values(static_cast<std::size_t>(n) * n, 0.0) {}
  double& operator()(int from, int to) { return values[static_cast<std::size_t>(from) * states + to]; }
  double operator()(int from, int to) const { return values[static_cast<std::size_t>(from) * states + to]; }
  double row_sum(int from) const;
};

/// Transition probabilities of a subcarrier during slot t (1-based, t <= k_c).
///
/// Row 0 (free subcarrier) mixes the number of activating nodes with the
/// chance that each picks this subcarrier; rows i > 0 add nodes that miss
/// the ongoing transmission. Transitions past state M are lumped into M.
TransitionMatrix transition_probabilities(int t, const MacTrajectory& trajectory, const MacConfig& mac, int nodes,
                                          const SensingErrors& errors);

/// Distribution of the number of nodes on a subcarrier.
///
/// Column t (1..k_c+1) is the state at the start of slot t, so column 1 is a
/// point mass at 0 and column t + 1 is the state while slot t is in use.
struct OccupancyDistribution {
  int states = 0;  // M + 1
  int columns = 0; // k_c + 1
  std::vector<double> values;

  double at(int l, int t) const { return values[static_cast<std::size_t>(t - 1) * states + l]; }
  double& at(int l, int t) { return values[static_cast<std::size_t>(t - 1) * states + l]; }
  /// State probabilities while slot t (1..k_c) is transmitted.
  double during(int l, int t) const { return at(l, t + 1); }
  int contention_slots() const { return columns - 1; }
  double column_sum(int t) const;
};

OccupancyDistribution occupancy_distribution(const MacConfig& mac, int nodes, int subcarriers,
                                             const SensingErrors& errors);

/// Mean number of nodes on a subcarrier at the start of slot t (1..k_c+1).
double mean_occupancy(const OccupancyDistribution& occupancy, int t);

/// Mean occupancy while each contention slot is in use; element k is slot k + 1.
std::vector<double> occupancy_during_slots(const OccupancyDistribution& occupancy);

/// Sensing energy per subcarrier per slot: P_s T_s M [1 - (1 - p)^k_c] / k_f.
double sensing_energy(const PowerTimingProfile& power, const MacConfig& mac, int nodes);

/// Transmission energy per subcarrier per slot,
///   (P_t / k_f) [sum_t mu_t T + mu_{k_c} (k_d T - T_s)],
/// where mu_t is the mean occupancy while slot t is in use.
double transmission_energy(const PowerTimingProfile& power, const MacConfig& mac,
                           const std::vector<double>& occupancy_during);

struct MacEnergy {
  double sensing = 0.0;
  double transmission = 0.0;
};

MacEnergy mac_energy(const PowerTimingProfile& power, const MacConfig& mac, int nodes, int subcarriers,
                     const SensingErrors& errors);

/// Slot-level simulator of one frame's contention period.
///
/// Every inactive node activates with probability p, senses each subcarrier
/// against the state at the start of the slot, and grabs min(s, sensed free)
/// of the sensed-free subcarriers uniformly at random. A node that senses
/// nothing free defers to the next frame. Nodes activating in the same slot
/// do not see each other.
class FrameSimulator {
 public:
  FrameSimulator(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors);

  struct SlotView {
    int slot = 0;                           // 1..k_c
    int activations = 0;                    // nodes that activated in this slot
    const std::vector<int>* occupancy;      // nodes per subcarrier while the slot is used
    const std::vector<char>* changed;       // subcarriers that gained a node in this slot
  };

  /// Runs one frame; calls `on_slot(const SlotView&)` after every contention slot.
  template <class Observer>
  void run(Rng& rng, Observer&& on_slot) {
    std::fill(occupancy_.begin(), occupancy_.end(), 0);
    held_ = 0;
    int inactive = nodes_;
    std::bernoulli_distribution activate(mac_.access_probability);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 1; t <= mac_.contention_slots; ++t) {
      std::fill(changed_.begin(), changed_.end(), 0);
      pending_.clear();
      int activations = 0;
      for (int node = 0; node < inactive; ++node) {
        if (!activate(rng)) continue;
        ++activations;
        candidates_.clear();
        for (int k = 0; k < subcarriers_; ++k) {
          const double u = unit(rng);
          const bool sensed_free = occupancy_[k] == 0 ? u >= errors_.false_alarm : u < errors_.missed_detection;
          if (sensed_free) candidates_.push_back(k);
        }
        const int picks = std::min<int>(mac_.max_subcarriers, static_cast<int>(candidates_.size()));
        for (int j = 0; j < picks; ++j) {
          std::uniform_int_distribution<int> pick(j, static_cast<int>(candidates_.size()) - 1);
          std::swap(candidates_[j], candidates_[pick(rng)]);
          pending_.push_back(candidates_[j]);
        }
      }
      inactive -= activations;
      for (int k : pending_) {
        ++occupancy_[k];
        changed_[k] = 1;
      }
      held_ += static_cast<long long>(pending_.size());
      on_slot(SlotView{t, activations, &occupancy_, &changed_});
    }
  }

  /// Subcarriers held by active nodes in the current frame, counted per node.
  long long held_pairs() const { return held_; }

 private:
  MacConfig mac_;
  int nodes_;
  int subcarriers_;
  SensingErrors errors_;
  std::vector<int> occupancy_;
  std::vector<char> changed_;
  std::vector<int> candidates_;
  std::vector<int> pending_;
  long long held_ = 0;
};

struct MacSimulation {
  std::size_t frames = 10'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct MacSimulationResult {
  MacEnergy energy;
  /// Empirical occupancy distribution with the same layout as the analytic one.
  OccupancyDistribution occupancy;
  /// Mean occupancy while each contention slot is in use.
  std::vector<double> occupancy_during;
  double mean_activations = 0.0;
  std::size_t frames = 0;
};

MacSimulationResult simulate_mac(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors,
                                 const PowerTimingProfile& power, const MacSimulation& options = {});

}  // namespace xlayer::mac
