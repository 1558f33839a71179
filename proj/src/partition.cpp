#include "wcert/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernels_detail.hpp"

namespace wcert {
namespace {

// Keeps every ball nondegenerate when a cluster collapses onto one point.
constexpr double kMinRadius = 1e-12;

}  // namespace

Partition::Partition(Matrix centers, std::vector<double> radii, SupportBox box, NormOrder order)
    : centers_(std::move(centers)), radii_(std::move(radii)), box_(std::move(box)), order_(order) {
  if (centers_.rows() != radii_.size()) throw std::invalid_argument("Partition: one radius per center required");
  if (centers_.rows() == 0) centers_ = Matrix(0, box_.dimension());
  if (centers_.cols() != box_.dimension()) throw std::invalid_argument("Partition: center dimension mismatch");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) throw std::invalid_argument("Partition: radii must be > 0");
    if (!box_.contains(centers_.row(i), 1e-12)) throw std::invalid_argument("Partition: center outside the box");
  }
}

std::size_t Partition::region_of(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("Partition::region_of: dimension mismatch");
  if (centers_.rows() == 0) return remainder_index();
  Matrix point(1, x.size());
  std::copy(x.begin(), x.end(), point.row(0).begin());
  std::size_t label;
  double distance;
  kernels::detail::nearest_one(point, centers_, order_, 0, label, distance);
  return distance <= radii_[label] ? label : remainder_index();
}

std::vector<std::size_t> Partition::region_labels(const Matrix& points) const {
  if (points.cols() != dimension()) throw std::invalid_argument("Partition::region_labels: dimension mismatch");
  if (centers_.rows() == 0) return std::vector<std::size_t>(points.rows(), remainder_index());
  return kernels::region_labels(points, centers_, radii_, order_);
}

Matrix Partition::representatives() const {
  Matrix reps = centers_;
  reps.append_row(remainder_center());
  return reps;
}

Partition build_partition(const Dataset& train, std::size_t M, const Config& cfg, const SupportBox& box) {
  cfg.validate();
  if (M < 1) throw std::invalid_argument("build_partition: M must be >= 1");
  if (train.dimension() != box.dimension()) throw std::invalid_argument("build_partition: dimension mismatch");
  train.require_inside(box);
  if (M == 1) return Partition(Matrix(0, box.dimension()), {}, box, cfg.norm_order);

  const std::size_t k = M - 1;
  KMeansResult km = lloyd_kmeans(train, k, cfg);
  const Matrix& x = train.points();
  std::vector<double> radii(k, kMinRadius);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::size_t c = km.assignment[i];
    radii[c] = std::max(radii[c], norm(x.row(i), km.centroids.row(c), cfg.norm_order));
  }

  if (k >= 2) {
    const auto wanted = static_cast<std::size_t>(std::ceil(cfg.neighbor_fraction * static_cast<double>(M)));
    const std::size_t rank = std::clamp<std::size_t>(wanted, 1, k - 1);
    std::vector<double> others;
    for (std::size_t i = 0; i < k; ++i) {
      others.clear();
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) others.push_back(norm(km.centroids.row(i), km.centroids.row(j), cfg.norm_order));
      std::nth_element(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(rank - 1), others.end());
      radii[i] = std::max(radii[i], others[rank - 1] / 2.0);
    }
  }
  return Partition(std::move(km.centroids), std::move(radii), box, cfg.norm_order);
}

std::vector<std::int64_t> region_counts(const Partition& part, const Dataset& data) {
  std::vector<std::int64_t> counts(part.num_regions(), 0);
  for (std::size_t label : part.region_labels(data.points())) ++counts[label];
  return counts;
}

DiscreteDistribution assign_weights(const Partition& part, const Dataset& data) {
  const std::vector<std::int64_t> counts = region_counts(part, data);
  const auto n = static_cast<double>(data.size());
  std::vector<double> weights(counts.size());
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    weights[i] = static_cast<double>(counts[i]) / n;
    assigned += weights[i];
  }
  weights.back() = std::max(0.0, 1.0 - assigned);
  return DiscreteDistribution(part.representatives(), std::move(weights));
}

Matrix cost_upper_matrix(const Partition& part, const Config& cfg) {
  cfg.validate();
  const Matrix reps = part.representatives();
  const std::size_t M = part.num_regions();
  std::vector<double> radius = part.radii();
  radius.push_back(part.remainder_radius());
  const double cap = std::pow(part.box().diameter(part.norm_order()), cfg.rho);
  Matrix cost(M, M);
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      const double reach = i == j ? radius[i] : radius[i] + norm(reps.row(i), reps.row(j), part.norm_order());
      cost(i, j) = std::min(std::pow(reach, cfg.rho), cap);
    }
  }
  return cost;
}

double uncovered_fraction(const Partition& part, const Matrix& samples) {
  if (samples.rows() == 0) throw std::invalid_argument("uncovered_fraction: no samples");
  std::size_t outside = 0;
  for (std::size_t label : part.region_labels(samples)) outside += label == part.remainder_index();
  return static_cast<double>(outside) / static_cast<double>(samples.rows());
}

double outside_support_fraction(const Partition& part, const Matrix& samples) {
  if (samples.rows() == 0) throw std::invalid_argument("outside_support_fraction: no samples");
  if (samples.cols() != part.dimension()) throw std::invalid_argument("outside_support_fraction: dimension mismatch");
  std::size_t outside = 0;
  for (std::size_t n = 0; n < samples.rows(); ++n) {
    bool inside = false;
    for (std::size_t i = 0; i < part.radii().size() && !inside; ++i)
      inside = norm(samples.row(n), part.centers().row(i), part.norm_order()) <= part.radii()[i];
    outside += !inside;
  }
  return static_cast<double>(outside) / static_cast<double>(samples.rows());
}

}  // namespace wcert
