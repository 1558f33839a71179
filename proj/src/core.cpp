#include "wcert/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wcert {

NormOrder parse_norm_order(std::string_view text) {
  if (text == "1" || text == "l1") return NormOrder::l1;
  if (text == "2" || text == "l2") return NormOrder::l2;
  if (text == "inf" || text == "linf") return NormOrder::linf;
  throw std::invalid_argument("unknown norm order '" + std::string(text) + "' (expected 1, 2 or inf)");
}

std::string to_string(NormOrder order) {
  switch (order) {
    case NormOrder::l1: return "1";
    case NormOrder::l2: return "2";
    case NormOrder::linf: return "inf";
  }
  return "?";
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("Matrix::append_row: column count mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Config::validate() const {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("Config: rho must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("Config: beta must lie in (0, 1)");
  if (dimension < 1) throw std::invalid_argument("Config: dimension must be >= 1");
  if (!(neighbor_fraction > 0.0 && neighbor_fraction <= 1.0))
    throw std::invalid_argument("Config: neighbor_fraction must lie in (0, 1]");
}

double norm(std::span<const double> x, std::span<const double> y, NormOrder order) {
  if (x.size() != y.size()) throw std::invalid_argument("norm: dimension mismatch");
  double acc = 0.0;
  switch (order) {
    case NormOrder::l1:
      for (std::size_t k = 0; k < x.size(); ++k) acc += std::abs(x[k] - y[k]);
      return acc;
    case NormOrder::l2:
      for (std::size_t k = 0; k < x.size(); ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
      return std::sqrt(acc);
    case NormOrder::linf:
      for (std::size_t k = 0; k < x.size(); ++k) acc = std::max(acc, std::abs(x[k] - y[k]));
      return acc;
  }
  return acc;
}

SupportBox::SupportBox(std::vector<double> center, double half_width)
    : center_(std::move(center)), half_width_(half_width) {
  if (center_.empty()) throw std::invalid_argument("SupportBox: dimension must be >= 1");
  if (!(half_width_ > 0.0)) throw std::invalid_argument("SupportBox: half_width must be > 0");
}

SupportBox SupportBox::unit(std::size_t dimension) {
  return SupportBox(std::vector<double>(dimension, 0.0), 0.5);
}

bool SupportBox::contains(std::span<const double> x, double tolerance) const {
  if (x.size() != center_.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - center_[k]) > half_width_ + tolerance) return false;
  return true;
}

double SupportBox::diameter(NormOrder order) const {
  const double side = 2.0 * half_width_;
  const auto d = static_cast<double>(center_.size());
  switch (order) {
    case NormOrder::l1: return side * d;
    case NormOrder::l2: return side * std::sqrt(d);
    case NormOrder::linf: return side;
  }
  return side;
}

Dataset::Dataset(Matrix points, DatasetRole role) : points_(std::move(points)), role_(role) {
  if (points_.rows() < 1) throw std::invalid_argument("Dataset: at least one sample required");
  if (points_.cols() < 1) throw std::invalid_argument("Dataset: dimension must be >= 1");
}

void Dataset::require_inside(const SupportBox& box) const {
  if (box.dimension() != dimension()) throw std::invalid_argument("Dataset: dimension does not match support box");
  for (std::size_t n = 0; n < size(); ++n) {
    if (!box.contains(points_.row(n))) {
      std::ostringstream msg;
      msg << "Dataset: sample " << n << " lies outside the support box";
      throw std::invalid_argument(msg.str());
    }
  }
}

DiscreteDistribution::DiscreteDistribution(Matrix support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("DiscreteDistribution: at least one atom required");
  if (support_.rows() != weights_.size())
    throw std::invalid_argument("DiscreteDistribution: support and weight sizes differ");
  for (double w : weights_)
    if (!(w >= 0.0)) throw std::invalid_argument("DiscreteDistribution: negative or NaN weight");
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("DiscreteDistribution: weights do not sum to 1");
  for (double& w : weights_) w /= total;
}

DiscreteDistribution DiscreteDistribution::without_empty_atoms() const {
  Matrix support;
  std::vector<double> weights;
  for (std::size_t i = 0; i < size(); ++i) {
    if (weights_[i] > 0.0) {
      support.append_row(support_.row(i));
      weights.push_back(weights_[i]);
    }
  }
  return DiscreteDistribution(std::move(support), std::move(weights));
}

}  // namespace wcert
