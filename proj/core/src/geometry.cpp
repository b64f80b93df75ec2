#include "xlayer/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "xlayer/numerics.hpp"

namespace xlayer::geometry {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

double Point::norm() const { return std::hypot(x, y); }

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t CountDistribution::draw(Rng& rng) const {
  if (kind == Kind::Fixed) return static_cast<std::size_t>(std::llround(mean));
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::size_t>(mean)(rng);
}

Point uniform_in_disk(double radius, Rng& rng, Point center) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = kTwoPi * unit(rng);
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

Point uniform_in_annulus(double inner, double outer, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::sqrt(inner * inner + (outer * outer - inner * inner) * unit(rng));
  const double theta = kTwoPi * unit(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

PointSet sample_cluster(CountDistribution count, double radius, Rng& rng) {
  require_positive(radius, "cluster radius");
  PointSet points(count.draw(rng));
  for (auto& p : points) p = uniform_in_disk(radius, rng);
  return points;
}

PointSet sample_ppp_interferers(double density, double exclusion, double window_radius, Rng& rng) {
  if (!(window_radius > exclusion)) throw std::invalid_argument("window radius must exceed the exclusion distance");
  if (density <= 0.0) return {};
  const double area = std::numbers::pi * (window_radius * window_radius - exclusion * exclusion);
  PointSet points(std::poisson_distribution<std::size_t>(density * area)(rng));
  for (auto& p : points) p = uniform_in_annulus(exclusion, window_radius, rng);
  return points;
}

PointSet sample_matern_interferers(double ap_density, double mean_active, double cluster_radius, double window_radius,
                                   double exclusion, Rng& rng, MaternOptions options) {
  require_positive(cluster_radius, "cluster radius");
  const double inner = options.parent_inner_radius < 0.0 ? cluster_radius : options.parent_inner_radius;
  if (!(window_radius > exclusion) || !(window_radius > inner))
    throw std::invalid_argument("window radius must exceed the exclusion distance and the parent inner radius");
  if (ap_density <= 0.0 || mean_active <= 0.0) return {};
  const auto parents = sample_ppp_interferers(ap_density, inner, window_radius, rng);
  const CountDistribution offspring{options.offspring, mean_active};
  PointSet points;
  points.reserve(static_cast<std::size_t>(parents.size() * mean_active * 1.2) + 8);
  for (const auto& parent : parents) {
    const std::size_t k = offspring.draw(rng);
    for (std::size_t i = 0; i < k; ++i) {
      const Point child = uniform_in_disk(cluster_radius, rng, parent);
      if (child.norm() >= exclusion) points.push_back(child);
    }
  }
  return points;
}

double pairwise_distance_pdf(double x, double cluster_radius) {
  require_positive(cluster_radius, "cluster radius");
  if (!(x > 0.0) || !(x < 2.0 * cluster_radius)) return 0.0;
  const double u = x / (2.0 * cluster_radius);
  const double shape = 2.0 / std::numbers::pi * (std::acos(u) - u * std::sqrt(1.0 - u * u));
  return 2.0 * x / (cluster_radius * cluster_radius) * shape;
}

double radial_pdf(double x, double cluster_radius) {
  if (x < 0.0 || x > cluster_radius) return 0.0;
  return 2.0 * x / (cluster_radius * cluster_radius);
}

double radial_cdf(double x, double cluster_radius) {
  if (x <= 0.0) return 0.0;
  if (x >= cluster_radius) return 1.0;
  return x * x / (cluster_radius * cluster_radius);
}

double ordered_distance_pdf(int n, int l, double x, double cluster_radius) {
  if (n < 1 || n > l) throw std::invalid_argument("ordered_distance_pdf: rank must satisfy 1 <= n <= l");
  require_positive(cluster_radius, "cluster radius");
  if (x < 0.0 || x > cluster_radius) return 0.0;
  const double f = radial_pdf(x, cluster_radius);
  const double F = radial_cdf(x, cluster_radius);
  const double norm = numerics::beta_function(n, l - n + 1);
  return std::pow(F, n - 1) * std::pow(1.0 - F, l - n) * f / norm;
}

std::vector<double> sample_ordered_distances(std::size_t count, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> d(count);
  for (auto& v : d) v = radius * std::sqrt(unit(rng));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace xlayer::geometry
