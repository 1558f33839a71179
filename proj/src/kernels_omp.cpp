#include "kernels_detail.hpp"

namespace wcert::kernels::omp {

Assignment nearest_center(const Matrix& points, const Matrix& centers, NormOrder order) {
  detail::check_shapes(points, centers);
  Assignment out;
  out.label.resize(points.rows());
  out.distance.resize(points.rows());
  const auto count = static_cast<std::ptrdiff_t>(points.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    detail::nearest_one(points, centers, order, i, out.label[i], out.distance[i]);
  }
  return out;
}

std::vector<std::size_t> region_labels(const Matrix& points, const Matrix& centers, std::span<const double> radii,
                                       NormOrder order) {
  detail::check_shapes(points, centers);
  if (radii.size() != centers.rows()) throw std::invalid_argument("region_labels: one radius per center required");
  std::vector<std::size_t> labels(points.rows());
  const auto count = static_cast<std::ptrdiff_t>(points.rows());
  const std::size_t remainder = centers.rows();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    std::size_t label;
    double distance;
    detail::nearest_one(points, centers, order, i, label, distance);
    labels[i] = distance <= radii[label] ? label : remainder;
  }
  return labels;
}

}  // namespace wcert::kernels::omp
