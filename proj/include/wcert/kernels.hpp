#pragma once

// Data-parallel sample loops. The serial versions are the reference; the
// OpenMP versions must return bit-identical results.

#include <span>
#include <vector>

#include "wcert/core.hpp"

namespace wcert::kernels {

struct Assignment {
  std::vector<std::size_t> label;
  std::vector<double> distance;
};

namespace serial {
Assignment nearest_center(const Matrix& points, const Matrix& centers, NormOrder order);
std::vector<std::size_t> region_labels(const Matrix& points, const Matrix& centers, std::span<const double> radii,
                                       NormOrder order);
}  // namespace serial

namespace omp {
Assignment nearest_center(const Matrix& points, const Matrix& centers, NormOrder order);
std::vector<std::size_t> region_labels(const Matrix& points, const Matrix& centers, std::span<const double> radii,
                                       NormOrder order);
}  // namespace omp

/// Nearest center per point under L_m, ties to the lowest center index.
inline Assignment nearest_center(const Matrix& points, const Matrix& centers, NormOrder order) {
  return omp::nearest_center(points, centers, order);
}

/// Region index per point: its nearest center i if within radii[i], else
/// centers.rows() (the remainder region).
inline std::vector<std::size_t> region_labels(const Matrix& points, const Matrix& centers,
                                              std::span<const double> radii, NormOrder order) {
  return omp::region_labels(points, centers, radii, order);
}

}  // namespace wcert::kernels
