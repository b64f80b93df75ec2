#include "xlayer/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xlayer {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  if (samples_.empty()) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::quantile(double q) const {
  if (samples_.empty()) throw std::logic_error("quantile of an empty sample");
  q = std::clamp(q, 0.0, 1.0);
  const auto n = samples_.size();
  const auto index = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  return samples_[std::min(n - 1, index == 0 ? 0 : index - 1)];
}

double EmpiricalCdf::mean() const {
  if (samples_.empty()) return 0.0;
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::variance() const {
  if (samples_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : samples_) ss += (v - m) * (v - m);
  return ss / static_cast<double>(samples_.size() - 1);
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto& x = a.samples();
  const auto& y = b.samples();
  if (x.empty() || y.empty()) return x.empty() && y.empty() ? 0.0 : 1.0;
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    worst = std::max(worst, std::abs(i / nx - j / ny));
  }
  return worst;
}

double ks_distance(const EmpiricalCdf& a, const std::function<double(double)>& cdf) {
  const auto& x = a.samples();
  const double n = static_cast<double>(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    worst = std::max({worst, std::abs((i + 1) / n - f), std::abs(f - i / n)});
  }
  return worst;
}

double binomial_standard_error(double p, std::size_t trials) {
  if (trials == 0) return 1.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

}  // namespace xlayer
