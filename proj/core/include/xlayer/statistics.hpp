#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace xlayer {

/// Empirical distribution of a sample, stored sorted.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  double quantile(double q) const;
  double mean() const;
  double variance() const;
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_distance(const EmpiricalCdf& a, const std::function<double(double)>& cdf);

/// Standard error of a proportion estimated from `trials` Bernoulli draws.
double binomial_standard_error(double p, std::size_t trials);

}  // namespace xlayer
