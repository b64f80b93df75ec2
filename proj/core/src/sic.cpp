#include "xlayer/sic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "xlayer/geometry.hpp"
#include "xlayer/numerics.hpp"
#include "xlayer/parallel.hpp"

namespace xlayer::sic {
namespace {

void check_scenario(const SicScenario& s) {
  if (s.colliders < 1) throw std::invalid_argument("sic: need at least one collider");
  if (!(s.threshold > 0.0)) throw std::invalid_argument("sic: threshold must be positive");
  if (!(s.cluster_radius > 0.0)) throw std::invalid_argument("sic: cluster radius must be positive");
  if (!(s.path_loss_exponent > 2.0)) throw std::invalid_argument("sic: path loss exponent must exceed 2");
  if (!(s.external_interference >= 0.0)) throw std::invalid_argument("sic: interference must be non-negative");
  if (!(s.transmit_power > 0.0)) throw std::invalid_argument("sic: transmit power must be positive");
}

void check_distance(const SicScenario& s, double x) {
  if (!(x >= 0.0) || x > s.cluster_radius) throw std::invalid_argument("sic: distance must lie in [0, d_c]");
}

double integrand(const SicScenario& s, double x, double y) {
  const double a = s.path_loss_exponent;
  const double ratio = s.threshold * std::pow(x, a) / std::pow(y, 0.5 * a);
  return 1.0 / (1.0 + ratio);
}

bool use_closed_form(const SicScenario& s, Method method) {
  if (method == Method::ClosedForm4) {
    if (s.path_loss_exponent != 4.0) throw std::invalid_argument("sic: closed form requires alpha = 4");
    return true;
  }
  return method == Method::Auto && s.path_loss_exponent == 4.0;
}

}  // namespace

double residual_antiderivative(const SicScenario& s, double x, double y) {
  if (y <= 0.0) return 0.0;
  if (x == 0.0) return y;
  const double a = s.path_loss_exponent;
  const double z = -std::pow(y, 0.5 * a) / (s.threshold * std::pow(x, a));
  return y * numerics::one_minus_gauss_2f1_family(a, z);
}

double residual_factor(const SicScenario& s, double x, Method method) {
  check_distance(s, x);
  if (x == 0.0) return 1.0;
  const double lo = x * x;
  const double hi = s.cluster_radius * s.cluster_radius;
  const double width = hi - lo;
  if (width < 1e-6 * hi) {
    // Simpson on the vanishing interval; the integrand is smooth there.
    return (integrand(s, x, lo) + 4.0 * integrand(s, x, 0.5 * (lo + hi)) + integrand(s, x, hi)) / 6.0;
  }
  if (use_closed_form(s, method)) {
    const double r = std::sqrt(s.threshold);
    return 1.0 + r * lo / width * (std::atan(1.0 / r) - std::atan(hi / (r * lo)));
  }
  return (residual_antiderivative(s, x, hi) - residual_antiderivative(s, x, lo)) / width;
}

double p_dec_conditional(int n, const SicScenario& s, double x, Method method) {
  check_scenario(s);
  if (n < 1 || n > s.colliders) throw std::invalid_argument("sic: rank must satisfy 1 <= n <= l");
  check_distance(s, x);
  const double noise = std::exp(-s.threshold * std::pow(x, s.path_loss_exponent) * s.external_interference /
                                s.transmit_power);
  const int weaker = s.colliders - n;
  if (weaker == 0) return noise;
  return noise * std::pow(residual_factor(s, x, method), weaker);
}

double p_dec(int n, const SicScenario& s, Method method) {
  check_scenario(s);
  if (n < 1) throw std::invalid_argument("sic: rank must be >= 1");
  if (n > s.colliders) return 0.0;
  auto f = [&](double x) {
    return p_dec_conditional(n, s, x, method) * geometry::ordered_distance_pdf(n, s.colliders, x, s.cluster_radius);
  };
  const auto r = numerics::adaptive_quadrature(f, 0.0, s.cluster_radius, numerics::Tolerance{1e-13, 1e-11}, 4000);
  if (!r.converged && r.error_estimate > 1e-9)
    throw numerics::NumericalError("sic: decode probability quadrature did not converge (error " +
                                   std::to_string(r.error_estimate) + ")");
  return std::clamp(r.value, 0.0, 1.0);
}

std::vector<double> decode_count_distribution(const SicScenario& s, Method method) {
  check_scenario(s);
  const int l = s.colliders;
  std::vector<double> out(l + 1);
  double prefix = 1.0;
  for (int i = 0; i <= l; ++i) {
    const double next = i + 1 <= l ? p_dec(i + 1, s, method) : 0.0;
    out[i] = (1.0 - next) * prefix;
    prefix *= next;
  }
  return out;
}

std::vector<std::vector<double>> decode_count_family(const SicScenario& base, int max_colliders, Method method,
                                                     unsigned threads) {
  if (max_colliders < 1) throw std::invalid_argument("sic: need at least one collider");
  return parallel_map<std::vector<double>>(static_cast<std::size_t>(max_colliders), threads, [&](std::size_t k) {
    SicScenario s = base;
    s.colliders = static_cast<int>(k) + 1;
    return decode_count_distribution(s, method);
  });
}

namespace {

struct TrialOutcome {
  int decoded = 0;
  std::vector<char> passes;  // per rank, with stronger ranks cancelled
};

TrialOutcome run_trial(const SicScenario& s, Ordering ordering, Rng& rng, std::vector<double>& power,
                       std::vector<double>& dist) {
  const int l = s.colliders;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  power.resize(l);
  dist.resize(l);
  for (int i = 0; i < l; ++i) {
    dist[i] = s.cluster_radius * std::sqrt(unit(rng));
    power[i] = s.transmit_power * fading(rng) * std::pow(dist[i], -s.path_loss_exponent);
  }
  if (ordering == Ordering::Power) {
    std::sort(power.begin(), power.end(), std::greater<>());
  } else {
    std::vector<int> order(l);
    for (int i = 0; i < l; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    std::vector<double> sorted(l);
    for (int i = 0; i < l; ++i) sorted[i] = power[order[i]];
    power.swap(sorted);
  }
  TrialOutcome out;
  out.passes.assign(l, 0);
  // residual[n] = sum of powers weaker than rank n.
  double residual = 0.0;
  for (int i = 0; i < l; ++i) residual += power[i];
  bool chain = true;
  for (int n = 0; n < l; ++n) {
    residual -= power[n];
    const double remaining = std::max(residual, 0.0);
    const bool ok = power[n] >= s.threshold * (remaining + s.external_interference);
    out.passes[n] = ok;
    if (chain && ok) ++out.decoded;
    chain = chain && ok;
  }
  return out;
}

}  // namespace

int sic_trial(const SicScenario& s, Ordering ordering, Rng& rng) {
  std::vector<double> power, dist;
  return run_trial(s, ordering, rng, power, dist).decoded;
}

SicSimulationResult simulate_sic(const SicScenario& s, const SicSimulation& options) {
  check_scenario(s);
  const int l = s.colliders;
  struct Tally {
    std::vector<double> counts;  // decoded 0..l
    std::vector<double> genie;   // per rank
  };
  auto merge = [](Tally& acc, const Tally& part) {
    if (acc.counts.empty()) {
      acc = part;
      return;
    }
    for (std::size_t i = 0; i < part.counts.size(); ++i) acc.counts[i] += part.counts[i];
    for (std::size_t i = 0; i < part.genie.size(); ++i) acc.genie[i] += part.genie[i];
  };
  const Tally total = parallel_blocks<Tally>(
      options.trials, options.threads, 4096,
      [&](std::size_t begin, std::size_t end) {
        Tally t{std::vector<double>(l + 1, 0.0), std::vector<double>(l, 0.0)};
        std::vector<double> power, dist;
        for (std::size_t i = begin; i < end; ++i) {
          Rng rng = trial_rng(options.seed, i, 0x51c);
          const auto out = run_trial(s, options.ordering, rng, power, dist);
          t.counts[out.decoded] += 1.0;
          for (int n = 0; n < l; ++n) t.genie[n] += out.passes[n];
        }
        return t;
      },
      merge);

  SicSimulationResult result;
  result.trials = options.trials;
  const double trials = static_cast<double>(options.trials);
  result.decode_counts.resize(l + 1);
  for (int i = 0; i <= l; ++i) result.decode_counts[i] = total.counts[i] / trials;
  result.genie_success.resize(l);
  for (int n = 0; n < l; ++n) result.genie_success[n] = total.genie[n] / trials;
  // Rank n + 1 was attempted in every trial that decoded at least n, and succeeded in those decoding at least n + 1.
  result.conditional_success.resize(l);
  double at_least = trials;
  for (int n = 0; n < l; ++n) {
    const double next = at_least - total.counts[n];
    result.conditional_success[n] = at_least > 0.0 ? next / at_least : 0.0;
    at_least = next;
  }
  return result;
}

}  // namespace xlayer::sic
