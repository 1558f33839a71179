#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "random.hpp"
#include "wcert/kernels.hpp"
#include "wcert/partition.hpp"

namespace wcert {
namespace {

constexpr double kShiftTolerance = 1e-8;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return acc;
}

Matrix seed_centroids(const Matrix& x, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  Matrix centroids(k, x.cols());
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = detail::uniform_index(rng, n);
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (double v : closest) total += v;
      if (total > 0.0) {
        const double target = detail::uniform01(rng) * total;
        double acc = 0.0;
        pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += closest[i];
          if (acc > target && closest[i] > 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = detail::uniform_index(rng, n);
      }
    }
    std::copy(x.row(pick).begin(), x.row(pick).end(), centroids.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) closest[i] = std::min(closest[i], squared_distance(x.row(i), centroids.row(c)));
  }
  return centroids;
}

double assign(const Matrix& x, const Matrix& centroids, std::vector<std::size_t>& labels, std::vector<double>& dist) {
  kernels::Assignment a = kernels::nearest_center(x, centroids, NormOrder::l2);
  labels = std::move(a.label);
  dist = std::move(a.distance);
  double inertia = 0.0;
  for (double d : dist) inertia += d * d;
  return inertia;
}

}  // namespace

KMeansResult lloyd_kmeans(const Dataset& train, std::size_t k, const Config& cfg, std::size_t max_iterations) {
  cfg.validate();
  const Matrix& x = train.points();
  if (k < 1) throw std::invalid_argument("lloyd_kmeans: k must be >= 1");
  if (k > x.rows()) throw std::invalid_argument("lloyd_kmeans: k exceeds the number of training samples");

  std::mt19937_64 rng(cfg.rng_seed);
  KMeansResult result;
  result.centroids = seed_centroids(x, k, rng);
  std::vector<double> dist;
  result.inertia = assign(x, result.centroids, result.assignment, dist);
  result.inertia_history.push_back(result.inertia);

  const std::size_t d = x.cols();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Matrix sums(k, d);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const std::size_t c = result.assignment[i];
      ++sizes[c];
      for (std::size_t a = 0; a < d; ++a) sums(c, a) += x(i, a);
    }
    Matrix next(k, d);
    std::vector<bool> taken(x.rows(), false);
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        for (std::size_t a = 0; a < d; ++a) next(c, a) = sums(c, a) / static_cast<double>(sizes[c]);
        continue;
      }
      // Empty cluster: restart it at the sample farthest from its centroid.
      std::size_t far = 0;
      double far_dist = -1.0;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        if (!taken[i] && dist[i] > far_dist) {
          far_dist = dist[i];
          far = i;
        }
      }
      taken[far] = true;
      std::copy(x.row(far).begin(), x.row(far).end(), next.row(c).begin());
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      shift = std::max(shift, std::sqrt(squared_distance(next.row(c), result.centroids.row(c))));
    result.centroids = std::move(next);

    const double inertia = assign(x, result.centroids, result.assignment, dist);
    if (inertia > result.inertia + 1e-9 * (1.0 + result.inertia))
      throw std::logic_error("lloyd_kmeans: inertia increased between iterations");
    result.inertia = inertia;
    result.inertia_history.push_back(inertia);
    result.iterations = it;
    if (shift < kShiftTolerance) break;
  }
  return result;
}

}  // namespace wcert
