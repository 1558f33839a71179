#pragma once

#include <cmath>
#include <stdexcept>

#include "wcert/kernels.hpp"

namespace wcert::kernels::detail {

// Monotone surrogate of ||x - y||_m (squared for m = 2) so comparisons avoid sqrt.
inline double proxy_distance(std::span<const double> x, std::span<const double> y, NormOrder order) {
  double acc = 0.0;
  switch (order) {
    case NormOrder::l1:
      for (std::size_t k = 0; k < x.size(); ++k) acc += std::abs(x[k] - y[k]);
      break;
    case NormOrder::l2:
      for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
      break;
    case NormOrder::linf:
      for (std::size_t k = 0; k < x.size(); ++k) acc = std::max(acc, std::abs(x[k] - y[k]));
      break;
  }
  return acc;
}

inline double from_proxy(double proxy, NormOrder order) { return order == NormOrder::l2 ? std::sqrt(proxy) : proxy; }

inline void nearest_one(const Matrix& points, const Matrix& centers, NormOrder order, std::size_t n,
                        std::size_t& label, double& distance) {
  const auto x = points.row(n);
  std::size_t best = 0;
  double best_value = proxy_distance(x, centers.row(0), order);
  for (std::size_t i = 1; i < centers.rows(); ++i) {
    const double v = proxy_distance(x, centers.row(i), order);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  label = best;
  distance = from_proxy(best_value, order);
}

inline void check_shapes(const Matrix& points, const Matrix& centers) {
  if (centers.rows() == 0) throw std::invalid_argument("kernels: no centers");
  if (points.cols() != centers.cols()) throw std::invalid_argument("kernels: dimension mismatch");
}

}  // namespace wcert::kernels::detail
