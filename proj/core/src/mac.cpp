#include "xlayer/mac.hpp"

#include <cmath>
#include <stdexcept>

#include "xlayer/parallel.hpp"

namespace xlayer::mac {
namespace {

// The MAC recursions also accept p = 0 as a limiting case.
void check_inputs(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors) {
  MacConfig probe = mac;
  if (mac.access_probability == 0.0) probe.access_probability = 1.0;
  auto report = validate(probe);
  const auto sensing = validate(errors);
  report.errors.insert(report.errors.end(), sensing.errors.begin(), sensing.errors.end());
  if (nodes < 1) report.errors.push_back({"topology.M", "must be >= 1"});
  if (subcarriers < 1) report.errors.push_back({"topology.N", "must be >= 1"});
  if (!report.ok()) throw ValidationError(std::move(report));
}

// C(n, k) x^k (1 - x)^(n - k), stable for the small n used here.
double binomial_pmf(int n, int k, double x) {
  if (k < 0 || k > n) return 0.0;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  const double a = k == 0 ? 1.0 : std::pow(x, k);
  const double b = n - k == 0 ? 1.0 : std::pow(1.0 - x, n - k);
  return std::exp(log_choose) * a * b;
}

}  // namespace

MacTrajectory evolve_mean_field(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors) {
  check_inputs(mac, nodes, subcarriers, errors);
  const int kc = mac.contention_slots;
  const double p = mac.access_probability;
  MacTrajectory tr;
  tr.inactive_nodes.reserve(kc + 1);
  tr.free_subcarriers.reserve(kc + 1);
  tr.inactive_nodes.push_back(nodes);
  tr.free_subcarriers.push_back(subcarriers);
  for (int t = 0; t < kc; ++t) {
    const double nf = tr.free_subcarriers[t];
    const double sensed = nf * (1.0 - errors.false_alarm) + (subcarriers - nf) * errors.missed_detection;
    const double xi = sensed > 0.0 ? std::min(mac.max_subcarriers / sensed, 1.0) : 0.0;
    tr.sensed_free.push_back(sensed);
    tr.selection.push_back(xi);
    tr.free_subcarriers.push_back(nf * std::pow(1.0 - p * (1.0 - errors.false_alarm) * xi, tr.inactive_nodes[t]));
    tr.inactive_nodes.push_back(tr.inactive_nodes[t] * (1.0 - p));
  }
  return tr;
}

int rounded_count(double value) { return std::max(0, static_cast<int>(std::nearbyint(value))); }

double TransitionMatrix::row_sum(int from) const {
  double s = 0.0;
  for (int l = 0; l < states; ++l) s += (*this)(from, l);
  return s;
}

TransitionMatrix transition_probabilities(int t, const MacTrajectory& trajectory, const MacConfig& mac, int nodes,
                                          const SensingErrors& errors) {
  if (t < 1 || t > trajectory.contention_slots()) throw std::out_of_range("transition_probabilities: slot out of range");
  const int m_bar = std::min(nodes, rounded_count(trajectory.inactive_nodes[t - 1]));
  const double xi = trajectory.selection[t - 1];
  const double p = mac.access_probability;
  TransitionMatrix T(nodes + 1);

  // Busy subcarrier: arrivals are nodes that activate, miss it, and pick it.
  const double join = p * errors.missed_detection * xi;
  for (int i = 1; i <= nodes; ++i)
    for (int k = 0; k <= m_bar; ++k) T(i, std::min(nodes, i + k)) += binomial_pmf(m_bar, k, join);

  // Free subcarrier: i nodes activate, l of them sense it free and pick it.
  const double pick = (1.0 - errors.false_alarm) * xi;
  T(0, 0) = std::pow(1.0 - p * pick, m_bar);
  for (int l = 1; l <= m_bar; ++l) {
    double sum = 0.0;
    for (int i = l; i <= m_bar; ++i) sum += binomial_pmf(m_bar, i, p) * binomial_pmf(i, l, pick);
    T(0, l) = sum;
  }
  return T;
}

double OccupancyDistribution::column_sum(int t) const {
  double s = 0.0;
  for (int l = 0; l < states; ++l) s += at(l, t);
  return s;
}

OccupancyDistribution occupancy_distribution(const MacConfig& mac, int nodes, int subcarriers,
                                             const SensingErrors& errors) {
  const auto trajectory = evolve_mean_field(mac, nodes, subcarriers, errors);
  OccupancyDistribution occ;
  occ.states = nodes + 1;
  occ.columns = mac.contention_slots + 1;
  occ.values.assign(static_cast<std::size_t>(occ.states) * occ.columns, 0.0);
  occ.at(0, 1) = 1.0;
  for (int t = 1; t <= mac.contention_slots; ++t) {
    const auto T = transition_probabilities(t, trajectory, mac, nodes, errors);
    for (int i = 0; i <= nodes; ++i) {
      const double from = occ.at(i, t);
      if (from == 0.0) continue;
      for (int l = i; l <= nodes; ++l) occ.at(l, t + 1) += from * T(i, l);
    }
  }
  return occ;
}

double mean_occupancy(const OccupancyDistribution& occupancy, int t) {
  if (t < 1 || t > occupancy.columns) throw std::out_of_range("mean_occupancy: slot out of range");
  double mu = 0.0;
  for (int l = 1; l < occupancy.states; ++l) mu += l * occupancy.at(l, t);
  return mu;
}

std::vector<double> occupancy_during_slots(const OccupancyDistribution& occupancy) {
  std::vector<double> mu(occupancy.contention_slots());
  for (int t = 1; t <= occupancy.contention_slots(); ++t) mu[t - 1] = mean_occupancy(occupancy, t + 1);
  return mu;
}

double sensing_energy(const PowerTimingProfile& power, const MacConfig& mac, int nodes) {
  return power.sensing_power * power.sensing_time * nodes *
         (1.0 - std::pow(1.0 - mac.access_probability, mac.contention_slots)) / mac.frame_slots;
}

double transmission_energy(const PowerTimingProfile& power, const MacConfig& mac,
                           const std::vector<double>& occupancy_during) {
  if (static_cast<int>(occupancy_during.size()) != mac.contention_slots)
    throw std::invalid_argument("transmission_energy: need one occupancy value per contention slot");
  const double T = power.slot_duration;
  double sum = 0.0;
  for (double mu : occupancy_during) sum += mu * T;
  const double last = occupancy_during.back();
  return power.transmit_power / mac.frame_slots *
         (sum + last * (mac.contention_free_slots() * T - power.sensing_time));
}

MacEnergy mac_energy(const PowerTimingProfile& power, const MacConfig& mac, int nodes, int subcarriers,
                     const SensingErrors& errors) {
  const auto occ = occupancy_distribution(mac, nodes, subcarriers, errors);
  return {sensing_energy(power, mac, nodes), transmission_energy(power, mac, occupancy_during_slots(occ))};
}

FrameSimulator::FrameSimulator(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors)
    : mac_(mac),
      nodes_(nodes),
      subcarriers_(subcarriers),
      errors_(errors),
      occupancy_(subcarriers, 0),
      changed_(subcarriers, 0) {
  check_inputs(mac, nodes, subcarriers, errors);
  candidates_.reserve(subcarriers);
}

MacSimulationResult simulate_mac(const MacConfig& mac, int nodes, int subcarriers, const SensingErrors& errors,
                                 const PowerTimingProfile& power, const MacSimulation& options) {
  check_inputs(mac, nodes, subcarriers, errors);
  const int kc = mac.contention_slots;
  const int states = nodes + 1;

  struct Tally {
    std::vector<double> histogram;  // [slot 1..k_c][state], occupancy while the slot is used
    double activations = 0.0;
    double pair_seconds = 0.0;      // summed subcarrier-node transmit time
  };
  auto merge = [](Tally& acc, const Tally& part) {
    if (acc.histogram.empty()) acc.histogram.assign(part.histogram.size(), 0.0);
    for (std::size_t i = 0; i < part.histogram.size(); ++i) acc.histogram[i] += part.histogram[i];
    acc.activations += part.activations;
    acc.pair_seconds += part.pair_seconds;
  };
  const double T = power.slot_duration;
  const Tally total = parallel_blocks<Tally>(
      options.frames, options.threads, 256,
      [&](std::size_t begin, std::size_t end) {
        Tally tally;
        tally.histogram.assign(static_cast<std::size_t>(kc) * states, 0.0);
        FrameSimulator sim(mac, nodes, subcarriers, errors);
        for (std::size_t frame = begin; frame < end; ++frame) {
          Rng rng = trial_rng(options.seed, frame, 0x3ac);
          long long last_pairs = 0;
          sim.run(rng, [&](const FrameSimulator::SlotView& view) {
            tally.activations += view.activations;
            double* row = &tally.histogram[static_cast<std::size_t>(view.slot - 1) * states];
            for (int n : *view.occupancy) row[std::min(n, nodes)] += 1.0;
            last_pairs = sim.held_pairs();
            tally.pair_seconds += static_cast<double>(last_pairs) * T;
          });
          // Contention-free slots, minus the sensing time each pair lost in its first slot.
          tally.pair_seconds += static_cast<double>(last_pairs) * (mac.contention_free_slots() * T - power.sensing_time);
        }
        return tally;
      },
      merge);

  MacSimulationResult result;
  result.frames = options.frames;
  const double frames = static_cast<double>(options.frames);
  const double per_subcarrier = frames * subcarriers;
  result.occupancy.states = states;
  result.occupancy.columns = kc + 1;
  result.occupancy.values.assign(static_cast<std::size_t>(states) * (kc + 1), 0.0);
  result.occupancy.at(0, 1) = 1.0;
  for (int t = 1; t <= kc; ++t)
    for (int l = 0; l < states; ++l)
      result.occupancy.at(l, t + 1) = total.histogram[static_cast<std::size_t>(t - 1) * states + l] / per_subcarrier;
  result.occupancy_during = occupancy_during_slots(result.occupancy);
  result.mean_activations = total.activations / frames;
  result.energy.sensing = power.sensing_power * power.sensing_time * total.activations / (frames * mac.frame_slots);
  result.energy.transmission = power.transmit_power * total.pair_seconds / (per_subcarrier * mac.frame_slots);
  return result;
}

}  // namespace xlayer::mac
