#pragma once

// Data-driven regions (k-means centers with covering radii) and the
// clusterized empirical distribution built on them.

#include <cstdint>
#include <span>
#include <vector>

#include "wcert/core.hpp"

namespace wcert {

struct KMeansResult {
  Matrix centroids;
  std::vector<std::size_t> assignment;
  double inertia = 0.0;
  std::size_t iterations = 0;
  /// Inertia after every assignment step, starting with the seeding.
  std::vector<double> inertia_history;
};

/// Lloyd's algorithm with k-means++ seeding (Euclidean). max_iterations = 0
/// returns the seeding itself with its assignment.
KMeansResult lloyd_kmeans(const Dataset& train, std::size_t k, const Config& cfg, std::size_t max_iterations = 300);

/// M - 1 balls (center c_i, radius r_i) plus a remainder region represented by
/// the center of the support box. A point belongs to region i if c_i is its
/// nearest center (lowest index on ties) and it lies within r_i; otherwise it
/// belongs to the remainder region, whose index is M - 1.
class Partition {
 public:
  Partition(Matrix centers, std::vector<double> radii, SupportBox box, NormOrder order);

  const Matrix& centers() const { return centers_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& remainder_center() const { return box_.center(); }
  double remainder_radius() const { return box_.diameter(order_) / 2.0; }
  const SupportBox& box() const { return box_; }
  NormOrder norm_order() const { return order_; }
  std::size_t dimension() const { return box_.dimension(); }
  /// M: the balls plus the remainder region.
  std::size_t num_regions() const { return radii_.size() + 1; }
  std::size_t remainder_index() const { return radii_.size(); }

  std::size_t region_of(std::span<const double> x) const;
  std::vector<std::size_t> region_labels(const Matrix& points) const;
  /// All M representative points: the centers followed by the remainder center.
  Matrix representatives() const;

 private:
  Matrix centers_;
  std::vector<double> radii_;
  SupportBox box_;
  NormOrder order_;
};

/// M = 1 yields the remainder region alone.
Partition build_partition(const Dataset& train, std::size_t M, const Config& cfg, const SupportBox& box);

/// Samples per region (length M, remainder last).
std::vector<std::int64_t> region_counts(const Partition& part, const Dataset& data);

/// Clusterized empirical distribution on the representatives; the remainder
/// weight is 1 minus the others.
DiscreteDistribution assign_weights(const Partition& part, const Dataset& data);

/// Upper bounds on the region-to-representative costs: (r_i + ||c_i - c_j||)^rho
/// off the diagonal, r_i^rho on it, each capped by the box diameter^rho.
Matrix cost_upper_matrix(const Partition& part, const Config& cfg);

/// Fraction of rows of `samples` that fall in the remainder region.
double uncovered_fraction(const Partition& part, const Matrix& samples);

/// Fraction of rows of `samples` outside every ball, i.e. outside the
/// approximate support. Never exceeds uncovered_fraction: a point inside some
/// ball but outside the ball of its nearest center is in the remainder region
/// without being outside the union.
double outside_support_fraction(const Partition& part, const Matrix& samples);

}  // namespace wcert
