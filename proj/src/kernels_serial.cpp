#include "kernels_detail.hpp"

namespace wcert::kernels::serial {

Assignment nearest_center(const Matrix& points, const Matrix& centers, NormOrder order) {
  detail::check_shapes(points, centers);
  Assignment out;
  out.label.resize(points.rows());
  out.distance.resize(points.rows());
  for (std::size_t n = 0; n < points.rows(); ++n)
    detail::nearest_one(points, centers, order, n, out.label[n], out.distance[n]);
  return out;
}

std::vector<std::size_t> region_labels(const Matrix& points, const Matrix& centers, std::span<const double> radii,
                                       NormOrder order) {
  detail::check_shapes(points, centers);
  if (radii.size() != centers.rows()) throw std::invalid_argument("region_labels: one radius per center required");
  std::vector<std::size_t> labels(points.rows());
  for (std::size_t n = 0; n < points.rows(); ++n) {
    std::size_t label;
    double distance;
    detail::nearest_one(points, centers, order, n, label, distance);
    labels[n] = distance <= radii[label] ? label : centers.rows();
  }
  return labels;
}

}  // namespace wcert::kernels::serial
