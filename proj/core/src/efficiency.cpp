#include "xlayer/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xlayer/interference.hpp"
#include "xlayer/parallel.hpp"
#include "xlayer/random.hpp"

namespace xlayer::efficiency {

DecodeFamily::DecodeFamily(std::vector<std::vector<double>> counts) : counts_(std::move(counts)) {
  for (const auto& d : counts_) {
    double a = 0.0, s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      a += (i + 1.0) * d[i];
      s += static_cast<double>(i) * d[i];
    }
    attempts_.push_back(a);
    successes_.push_back(s);
  }
}

sic::SicScenario sic_scenario(const ParameterBundle& bundle, int colliders, const EfficiencyOptions& options) {
  sic::SicScenario s;
  s.colliders = colliders;
  s.threshold = bundle.decoding.threshold;
  s.cluster_radius = bundle.topology.cluster_radius;
  s.path_loss_exponent = bundle.topology.path_loss_exponent;
  s.transmit_power = 1.0;
  s.external_interference = interference::aggregate_variance(bundle.topology, 1.0, options.sic_mean_active);
  return s;
}

DecodeFamily decode_family(const ParameterBundle& bundle, const EfficiencyOptions& options) {
  return DecodeFamily(sic::decode_count_family(sic_scenario(bundle, 1, options), bundle.topology.mean_nodes,
                                               options.method, options.threads));
}

std::shared_ptr<const DecodeFamily> DecodeFamilyCache::get(const ParameterBundle& bundle,
                                                           const EfficiencyOptions& options) {
  const auto s = sic_scenario(bundle, 1, options);
  const Key key{s.threshold, s.external_interference, s.cluster_radius, s.path_loss_exponent,
                bundle.topology.mean_nodes, static_cast<int>(options.method)};
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto family = std::make_shared<const DecodeFamily>(decode_family(bundle, options));
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, std::move(family)).first->second;
}

std::size_t DecodeFamilyCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<double> state_weights(const mac::OccupancyDistribution& occupancy, const MacConfig& mac) {
  const int kc = occupancy.contention_slots();
  if (kc != mac.contention_slots) throw std::invalid_argument("state_weights: occupancy does not match k_c");
  std::vector<double> w(occupancy.states, 0.0);
  for (int l = 0; l < occupancy.states; ++l) {
    for (int t = 1; t <= kc; ++t) w[l] += occupancy.during(l, t);
    w[l] += mac.contention_free_slots() * occupancy.during(l, kc);
  }
  return w;
}

namespace {

template <class PerState>
double weighted_sum(const mac::OccupancyDistribution& occupancy, const MacConfig& mac, const DecodeFamily& family,
                    PerState per_state) {
  if (family.max_colliders() < occupancy.states - 1)
    throw std::invalid_argument("decode family does not cover every occupancy state");
  const auto w = state_weights(occupancy, mac);
  double sum = 0.0;
  for (int l = 1; l < occupancy.states; ++l) sum += w[l] * per_state(l);
  return sum;
}

}  // namespace

double decoding_energy(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                       const PowerTimingProfile& power, const MacConfig& mac) {
  return power.decoding_power * power.slot_duration / mac.frame_slots *
         weighted_sum(occupancy, mac, family, [&](int l) { return family.attempts(l); });
}

double hybrid_throughput(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                         const DecodingConfig& decoding, const MacConfig& mac, double slot_duration) {
  return decoding.gain() * slot_duration / mac.frame_slots *
         weighted_sum(occupancy, mac, family, [&](int l) { return family.successes(l); });
}

double distributed_throughput(const mac::OccupancyDistribution& occupancy, const DecodeFamily& family,
                              const DecodingConfig& decoding, const MacConfig& mac, double slot_duration) {
  return decoding.gain() * slot_duration / mac.frame_slots *
         weighted_sum(occupancy, mac, family, [&](int l) { return family.single(l); });
}

SchemeReport finish(SchemeReport r) {
  const double e = r.total_energy();
  r.efficiency = e > 0.0 ? r.throughput / e : 0.0;
  return r;
}

SchemeReport hybrid_efficiency(const ParameterBundle& b, const mac::OccupancyDistribution& occupancy,
                               const DecodeFamily& family) {
  SchemeReport r;
  r.scheme = SchemeKind::Hybrid;
  r.sensing_energy = mac::sensing_energy(b.power, b.mac, b.topology.mean_nodes);
  r.transmission_energy = mac::transmission_energy(b.power, b.mac, mac::occupancy_during_slots(occupancy));
  r.decoding_energy = decoding_energy(occupancy, family, b.power, b.mac);
  r.throughput = hybrid_throughput(occupancy, family, b.decoding, b.mac, b.power.slot_duration);
  return finish(r);
}

SchemeReport distributed_efficiency(const ParameterBundle& b, const mac::OccupancyDistribution& occupancy,
                                    const DecodeFamily& family) {
  SchemeReport r;
  r.scheme = SchemeKind::Distributed;
  r.sensing_energy = mac::sensing_energy(b.power, b.mac, b.topology.mean_nodes);
  r.transmission_energy = mac::transmission_energy(b.power, b.mac, mac::occupancy_during_slots(occupancy));
  r.decoding_energy = b.power.decoding_power * b.power.slot_duration;
  r.throughput = distributed_throughput(occupancy, family, b.decoding, b.mac, b.power.slot_duration);
  return finish(r);
}

SchemeReport centralized_efficiency(const PowerTimingProfile& power, const DecodingConfig& decoding,
                                    double single_decode) {
  SchemeReport r;
  r.scheme = SchemeKind::Centralized;
  const double T = power.slot_duration;
  r.control_energy = power.control_power * T;
  r.transmission_energy = power.transmit_power * T;
  r.decoding_energy = power.decoding_power * T;
  r.throughput = decoding.gain() * single_decode * T;
  return finish(r);
}

SchemeComparison evaluate_schemes(const ParameterBundle& bundle, const EfficiencyOptions& options,
                                  DecodeFamilyCache* cache) {
  require_valid(bundle);
  std::shared_ptr<const DecodeFamily> family =
      cache ? cache->get(bundle, options) : std::make_shared<const DecodeFamily>(decode_family(bundle, options));
  const auto occupancy =
      mac::occupancy_distribution(bundle.mac, bundle.topology.mean_nodes, bundle.topology.subcarriers, bundle.sensing);
  SchemeComparison c;
  c.hybrid = hybrid_efficiency(bundle, occupancy, *family);
  c.distributed = distributed_efficiency(bundle, occupancy, *family);
  c.centralized = centralized_efficiency(bundle.power, bundle.decoding, family->single(1));
  return c;
}

namespace {

ParameterBundle with_value(ParameterBundle b, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::Threshold:
      b.decoding.threshold = value;
      break;
    case SweepVariable::DecodingPower:
      b.power.decoding_power = value;
      break;
    case SweepVariable::ControlPower:
      b.power.control_power = value;
      break;
    case SweepVariable::AccessProbability:
      b.mac.access_probability = value;
      break;
    case SweepVariable::ContentionSlots:
      b.mac.contention_slots = static_cast<int>(std::lround(value));
      break;
  }
  return b;
}

}  // namespace

std::vector<SchemeComparison> compare_schemes(const ParameterBundle& bundle, SweepVariable variable,
                                              const std::vector<double>& values, const EfficiencyOptions& options) {
  DecodeFamilyCache cache;
  EfficiencyOptions inner = options;
  inner.threads = 1;
  return parallel_map<SchemeComparison>(values.size(), options.threads, [&](std::size_t i) {
    auto c = evaluate_schemes(with_value(bundle, variable, values[i]), inner, &cache);
    c.value = values[i];
    return c;
  });
}

double hybrid_argmax_db(const ParameterBundle& bundle, double lo_db, double hi_db, const EfficiencyOptions& options) {
  const auto occupancy =
      mac::occupancy_distribution(bundle.mac, bundle.topology.mean_nodes, bundle.topology.subcarriers, bundle.sensing);
  auto eta = [&](double db) {
    ParameterBundle b = bundle;
    b.decoding.threshold = db_to_linear(db);
    return hybrid_efficiency(b, occupancy, decode_family(b, options)).efficiency;
  };
  // Coarse scan to bracket the global maximum, then golden section.
  constexpr int kScan = 16;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = eta(lo_db + (hi_db - lo_db) * i / kScan);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double step = (hi_db - lo_db) / kScan;
  double a = lo_db + std::max(0, best - 1) * step;
  double b = lo_db + std::min(kScan, best + 1) * step;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = eta(c), fd = eta(d);
  while (b - a > 1e-3) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = eta(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = eta(d);
    }
  }
  return 0.5 * (a + b);
}

ComposedResult simulate_composed(const ParameterBundle& bundle, const ComposedSimulation& simulation,
                                 const EfficiencyOptions& options) {
  require_valid(bundle);
  const int M = bundle.topology.mean_nodes;
  const int N = bundle.topology.subcarriers;
  const auto& mac_cfg = bundle.mac;
  const double T = bundle.power.slot_duration;
  const double kd = mac_cfg.contention_free_slots();
  std::vector<sic::SicScenario> scenarios;
  for (int l = 1; l <= M; ++l) scenarios.push_back(sic_scenario(bundle, l, options));

  struct Tally {
    double activations = 0.0;
    double pair_seconds = 0.0;
    double attempts = 0.0;         // weighted by slots
    double successes = 0.0;        // weighted by slots
    double single_successes = 0.0; // weighted by slots
    double occupied_slots = 0.0;
  };
  auto merge = [](Tally& a, const Tally& b) {
    a.activations += b.activations;
    a.pair_seconds += b.pair_seconds;
    a.attempts += b.attempts;
    a.successes += b.successes;
    a.single_successes += b.single_successes;
    a.occupied_slots += b.occupied_slots;
  };
  const Tally total = parallel_blocks<Tally>(
      simulation.frames, simulation.threads, 64,
      [&](std::size_t begin, std::size_t end) {
        Tally tally;
        mac::FrameSimulator sim(mac_cfg, M, N, bundle.sensing);
        std::vector<int> decoded(N, 0);
        for (std::size_t frame = begin; frame < end; ++frame) {
          Rng rng = trial_rng(simulation.seed, frame, 0xc0);
          Rng sic_rng = trial_rng(simulation.seed, frame, 0xc1);
          long long pairs = 0;
          const std::vector<int>* last = nullptr;
          auto meter = [&](const std::vector<int>& occ, double slots) {
            for (int k = 0; k < N; ++k) {
              if (occ[k] == 0) continue;
              tally.attempts += slots * (decoded[k] + 1);
              tally.successes += slots * decoded[k];
              tally.single_successes += slots * (decoded[k] == 1 ? 1.0 : 0.0);
              tally.occupied_slots += slots;
            }
          };
          sim.run(rng, [&](const mac::FrameSimulator::SlotView& view) {
            tally.activations += view.activations;
            const auto& occ = *view.occupancy;
            for (int k = 0; k < N; ++k) {
              if ((*view.changed)[k])
                decoded[k] = sic::sic_trial(scenarios[std::min(occ[k], M) - 1], simulation.ordering, sic_rng);
            }
            meter(occ, 1.0);
            pairs = sim.held_pairs();
            tally.pair_seconds += static_cast<double>(pairs) * T;
            last = view.occupancy;
          });
          tally.pair_seconds += static_cast<double>(pairs) * (kd * T - bundle.power.sensing_time);
          if (last && kd > 0) meter(*last, kd);
        }
        return tally;
      },
      merge);

  const double norm = static_cast<double>(simulation.frames) * N * mac_cfg.frame_slots;
  ComposedResult out;
  SchemeReport h;
  h.scheme = SchemeKind::Hybrid;
  h.sensing_energy = bundle.power.sensing_power * bundle.power.sensing_time * total.activations /
                     (static_cast<double>(simulation.frames) * mac_cfg.frame_slots);
  h.transmission_energy = bundle.power.transmit_power * total.pair_seconds / norm;
  h.decoding_energy = bundle.power.decoding_power * T * total.attempts / norm;
  h.throughput = bundle.decoding.gain() * T * total.successes / norm;
  out.hybrid = finish(h);

  SchemeReport d = h;
  d.scheme = SchemeKind::Distributed;
  d.decoding_energy = bundle.power.decoding_power * T;
  d.throughput = bundle.decoding.gain() * T * total.single_successes / norm;
  out.distributed = finish(d);
  if (total.occupied_slots > 0.0) {
    out.mean_attempts = total.attempts / total.occupied_slots;
    out.mean_successes = total.successes / total.occupied_slots;
  }
  return out;
}

}  // namespace xlayer::efficiency
