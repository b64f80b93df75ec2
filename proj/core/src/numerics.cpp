#include "xlayer/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xlayer::numerics {
namespace {

void check_family_arguments(double alpha, double z) {
  if (!(alpha > 2.0)) throw std::invalid_argument("gauss_2f1_family: alpha must exceed 2");
  if (!(z <= 0.0)) throw std::invalid_argument("gauss_2f1_family: z must be <= 0");
}

// sum_{k >= first} c / (c + k) * x^k for |x| < 1.
double incomplete_series(double c, double x, int first) {
  double power = std::pow(x, first);
  double sum = 0.0;
  for (int k = first; k < 400; ++k) {
    const double term = c / (c + k) * power;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
    power *= x;
  }
  throw NumericalError("gauss_2f1_family: series did not converge");
}

// b * int_0^1 t^{b-1} / (1 + w t) dt with t = u^{1/b}, which removes the
// endpoint singularity: int_0^1 du / (1 + w u^{1/b}).
double euler_integral(double b, double w) {
  auto f = [b, w](double u) { return 1.0 / (1.0 + w * std::pow(u, 1.0 / b)); };
  const auto r = adaptive_quadrature(f, 0.0, 1.0, Tolerance{1e-16, 1e-14}, 2000);
  if (!r.converged && r.error_estimate > 1e-12 * std::abs(r.value))
    throw NumericalError("gauss_2f1_family: quadrature did not converge");
  return r.value;
}

// z -> 1/z connection for w = -z > 1; requires 0 < b < 1.
double reflected(double b, double w) {
  const double head = std::pow(w, -b) * std::numbers::pi / std::sin(std::numbers::pi * b);
  const double tail = incomplete_series(1.0 - b, -1.0 / w, 0) / ((1.0 - b) * w);
  return b * (head - tail);
}

}  // namespace

double gauss_2f1_family(double alpha, double z) {
  check_family_arguments(alpha, z);
  const double b = 2.0 / alpha;
  const double w = -z;
  if (w < 0.5) return incomplete_series(b, z, 0);
  if (w <= 2.0) return euler_integral(b, w);
  return reflected(b, w);
}

double one_minus_gauss_2f1_family(double alpha, double z) {
  check_family_arguments(alpha, z);
  if (-z < 0.5) return -incomplete_series(2.0 / alpha, z, 1);
  return 1.0 - gauss_2f1_family(alpha, z);
}

double beta_function(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_function: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

InversionResult cf_inversion_detailed(const std::function<std::complex<double>(double)>& cf, double threshold,
                                      Tail tail, InversionOptions options) {
  if (!(threshold > 0.0)) throw std::invalid_argument("cf_inversion: threshold must be positive");

  // Work in units of the threshold so the panel width and the truncation
  // test are dimensionless: omega = u / threshold.
  auto integrand = [&](double u) {
    const std::complex<double> value = cf(u / threshold) * std::polar(1.0, -u);
    return -value.imag() / (std::numbers::pi * u);
  };

  constexpr double kPanel = std::numbers::pi / 4.0;
  constexpr std::size_t kMinPanels = 8;
  double sum = 0.0;
  double previous = 0.0;
  double quadrature_error = 0.0;
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= options.max_panels)
      throw NumericalError("cf_inversion: characteristic function decays too slowly to truncate");
    const double a = k * kPanel;
    const double b = a + kPanel;
    const Tolerance panel_tol{1e-3 * options.tolerance * kPanel / (1.0 + a), 1e-12};
    const auto r = adaptive_quadrature(integrand, a, b, panel_tol, 200);
    previous = sum;
    sum += r.value;
    quadrature_error += r.error_estimate;
    if (k + 1 >= kMinPanels && std::abs(cf(b / threshold)) / b < options.truncation) break;
  }

  const double below = 0.5 + 0.5 * (sum + previous);
  InversionResult result;
  result.panels = k + 1;
  result.error_estimate = quadrature_error + 0.5 * std::abs(sum - previous);
  double p = tail == Tail::Below ? below : 1.0 - below;
  const double slack = std::max(options.tolerance, result.error_estimate);
  if (p < -slack || p > 1.0 + slack)
    throw NumericalError("cf_inversion: probability " + std::to_string(p) + " outside [0, 1]");
  result.probability = std::clamp(p, 0.0, 1.0);
  return result;
}

}  // namespace xlayer::numerics
