#pragma once

#include <cstddef>
#include <vector>

#include "xlayer/random.hpp"

namespace xlayer::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;

  double norm() const;
};

double distance(Point a, Point b);

using PointSet = std::vector<Point>;

/// Number of nodes placed in a cluster: Poisson with the given mean, or fixed.
struct CountDistribution {
  enum class Kind { Poisson, Fixed };
  Kind kind = Kind::Fixed;
  double mean = 0.0;

  static CountDistribution poisson(double mean) { return {Kind::Poisson, mean}; }
  static CountDistribution fixed(std::size_t count) { return {Kind::Fixed, static_cast<double>(count)}; }

  std::size_t draw(Rng& rng) const;
};

/// Uniform point in the disk of radius `radius` around `center`.
Point uniform_in_disk(double radius, Rng& rng, Point center = {});

/// Uniform point in the annulus inner <= r <= outer around the origin.
Point uniform_in_annulus(double inner, double outer, Rng& rng);

/// Nodes of one cluster, i.i.d. uniform in b(0, radius).
PointSet sample_cluster(CountDistribution count, double radius, Rng& rng);

struct MaternOptions {
  /// Parents are placed on the annulus parent_inner_radius <= r <= window_radius.
  /// A negative value means "use the cluster radius".
  double parent_inner_radius = -1.0;
  /// Offspring per parent. Fixed rounds `mean` to the nearest count.
  CountDistribution::Kind offspring = CountDistribution::Kind::Fixed;
};

/// Matern cluster process seen from the representative cluster at the origin.
///
/// Parents form a PPP of density `ap_density` outside the representative
/// cluster; each spawns `mean_active` offspring uniform in its disk of radius
/// `cluster_radius`. Offspring closer than `exclusion` to the origin are
/// dropped. Parents near the window edge keep all their offspring.
PointSet sample_matern_interferers(double ap_density, double mean_active, double cluster_radius, double window_radius,
                                   double exclusion, Rng& rng, MaternOptions options = {});

/// Homogeneous PPP on the annulus exclusion <= r <= window_radius.
PointSet sample_ppp_interferers(double density, double exclusion, double window_radius, Rng& rng);

/// Default simulation window for interference sampling: 50 d_min.
inline double default_window_radius(double exclusion) { return 50.0 * exclusion; }

/// Density of the distance between two independent uniform points in a disk
/// of radius `cluster_radius`; zero outside [0, 2 d_c].
double pairwise_distance_pdf(double x, double cluster_radius);

/// Distribution of a single distance to the center: f_D(x) = 2x / d_c^2 and F_D(x) = x^2 / d_c^2.
double radial_pdf(double x, double cluster_radius);
double radial_cdf(double x, double cluster_radius);

/// Density of the n-th smallest of l i.i.d. radial distances (1-based n).
double ordered_distance_pdf(int n, int l, double x, double cluster_radius);

/// Sorted distances to the origin of `count` uniform points in b(0, radius).
std::vector<double> sample_ordered_distances(std::size_t count, double radius, Rng& rng);

}  // namespace xlayer::geometry
