#pragma once

// Special functions and integration engines shared by the analytic models.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace xlayer::numerics {

/// Raised when an integral or series cannot reach its requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Absolute-or-relative stopping rule: done when error <= max(absolute, relative * |value|).
struct Tolerance {
  double absolute = 1e-13;
  double relative = 1e-10;

  double bound(double magnitude) const { return std::max(absolute, relative * magnitude); }
};

template <class T>
struct BasicQuadratureResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using QuadratureResult = BasicQuadratureResult<double>;
using ComplexQuadratureResult = BasicQuadratureResult<std::complex<double>>;

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T mid = f(center);
  T kronrod = mid * kKronrodWeights[7];
  T gauss = mid * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// error meets `tol` or `max_panels` panels exist. On exhaustion the best
/// estimate is returned with `converged == false`; callers decide whether
/// that is fatal. Endpoints are never evaluated, so integrable endpoint
/// singularities are allowed.
template <class F>
auto adaptive_quadrature(F&& f, double a, double b, Tolerance tol = {}, std::size_t max_panels = 4000) {
  using T = std::decay_t<decltype(f(a))>;
  BasicQuadratureResult<T> result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<detail::Panel<T>> panels;
  panels.push(detail::gauss_kronrod_15<T>(f, a, b));
  result.evaluations = 15;
  T total = panels.top().value;
  double error = panels.top().error;
  while (error > tol.bound(std::abs(total)) && panels.size() < max_panels) {
    const auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at floating-point resolution; keep it and stop refining.
      panels.push(worst);
      break;
    }
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running update.
  T sum{};
  double err = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  result.value = sum;
  result.error_estimate = err;
  result.converged = err <= tol.bound(std::abs(sum));
  return result;
}

/// Integral of f over [a, inf) through the map x = a + t / (1 - t), t in [0, 1).
template <class F>
QuadratureResult integrate_to_infinity(F&& f, double a, Tolerance tol = {}, std::size_t max_panels = 4000) {
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double value = f(x);
    return value == 0.0 ? 0.0 : value / (one_minus * one_minus);
  };
  return adaptive_quadrature(mapped, 0.0, 1.0, tol, max_panels);
}

/// Gauss hypergeometric 2F1(1, 2/alpha; 1 + 2/alpha; z) for alpha > 2 and z <= 0.
///
/// Power series for |z| < 0.5, quadrature of the Euler integral for
/// 0.5 <= |z| <= 2, and the z -> 1/z connection formula beyond that.
/// Relative accuracy is about 1e-13 throughout.
double gauss_2f1_family(double alpha, double z);

/// 1 - 2F1(1, 2/alpha; 1 + 2/alpha; z), accurate when the result is small.
double one_minus_gauss_2f1_family(double alpha, double z);

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0.
double beta_function(double a, double b);

enum class Tail { Below, Above };

struct InversionOptions {
  double tolerance = 1e-9;
  /// Truncate once |cf(omega)| / (omega * threshold) drops below this.
  double truncation = 1e-10;
  std::size_t max_panels = 2'000'000;
};

struct InversionResult {
  double probability = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Tail probability Pr[X < threshold] (Below) or Pr[X > threshold] (Above) of
/// a non-negative continuous variable from its characteristic function
/// cf(omega) = E[exp(j omega X)], via the Gil-Pelaez integral
///   1/2 + 1/(2 pi) int_0^inf Re{[cf(-w) e^{jw rho} - cf(w) e^{-jw rho}] / (jw)} dw.
///
/// The frequency axis is cut into panels of width pi / (4 rho), each
/// integrated adaptively, until the truncation test passes; the final
/// estimate averages the last two partial sums to damp the oscillating tail.
/// Throws NumericalError if the CF decays too slowly to truncate, or if the
/// result lies outside [0, 1] by more than the tolerance.
InversionResult cf_inversion_detailed(const std::function<std::complex<double>(double)>& cf, double threshold,
                                      Tail tail, InversionOptions options = {});

inline double cf_inversion(const std::function<std::complex<double>(double)>& cf, double threshold, Tail tail,
                           InversionOptions options = {}) {
  return cf_inversion_detailed(cf, threshold, tail, options).probability;
}

/// z^exponent for z with positive real part, evaluated from log|z| and an
/// argument that varies continuously with the caller's parameter.
inline std::complex<double> continuous_power(std::complex<double> z, double exponent) {
  const double log_modulus = std::log(std::abs(z));
  const double argument = std::atan2(z.imag(), z.real());
  return std::polar(std::exp(exponent * log_modulus), exponent * argument);
}

}  // namespace xlayer::numerics
