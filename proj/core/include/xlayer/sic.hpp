#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xlayer/random.hpp"

namespace xlayer::sic {

/// l transmissions colliding on one subcarrier, received at the cluster AP.
struct SicScenario {
  int colliders = 5;                  // l
  double threshold = 1.0;             // zeta, linear
  double cluster_radius = 100.0;      // d_c
  double path_loss_exponent = 4.0;    // alpha
  double external_interference = 0.0; // sigma_I^2, relative to transmit_power
  double transmit_power = 1.0;        // P_t
};

enum class Method {
  /// Closed form for alpha = 4, general hypergeometric path otherwise.
  Auto,
  General,
  ClosedForm4,
};

/// Mean over y in [x^2, d_c^2] of y^(a/2) / (y^(a/2) + zeta x^a): the chance
/// that one weaker collider at squared distance y leaves rank n decodable.
double residual_factor(const SicScenario& scenario, double x, Method method = Method::Auto);

/// Antiderivative y (1 - 2F1(1, 2/a; 1 + 2/a; -y^(a/2) / (zeta x^a))) of that integrand.
double residual_antiderivative(const SicScenario& scenario, double x, double y);

/// Probability of decoding rank n given its distance x and the n - 1 stronger ones cancelled:
///   exp(-zeta x^a sigma_I^2 / P_t) * residual_factor^(l - n).
double p_dec_conditional(int n, const SicScenario& scenario, double x, Method method = Method::Auto);

/// Probability of decoding rank n, averaged over the n-th smallest distance.
/// Zero when n exceeds the number of colliders.
double p_dec(int n, const SicScenario& scenario, Method method = Method::Auto);

/// Probability of decoding exactly i = 0..l transmissions, assuming
/// independent consecutive decodes.
std::vector<double> decode_count_distribution(const SicScenario& scenario, Method method = Method::Auto);

/// decode_count_distribution for l = 1..max_colliders; element l - 1 has size l + 1.
std::vector<std::vector<double>> decode_count_family(const SicScenario& base, int max_colliders,
                                                     Method method = Method::Auto, unsigned threads = 0);

enum class Ordering {
  /// Decode in order of received power, the true SIC order.
  Power,
  /// Decode in order of distance, ignoring fading.
  Distance,
};

/// Number of transmissions decoded in one random draw of positions and fading.
int sic_trial(const SicScenario& scenario, Ordering ordering, Rng& rng);

struct SicSimulation {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  Ordering ordering = Ordering::Power;
};

struct SicSimulationResult {
  /// P(rank n decoded | ranks 1..n-1 decoded), n = 1..l.
  std::vector<double> conditional_success;
  /// P(rank n passes its SINR test with ranks 1..n-1 cancelled), n = 1..l.
  std::vector<double> genie_success;
  /// Fraction of trials decoding exactly i = 0..l transmissions.
  std::vector<double> decode_counts;
  std::size_t trials = 0;
};

SicSimulationResult simulate_sic(const SicScenario& scenario, const SicSimulation& options = {});

}  // namespace xlayer::sic
