#pragma once

// Shared numeric and configuration types.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wcert {

/// Ground-metric order m of the L_m norm.
enum class NormOrder { l1, l2, linf };

NormOrder parse_norm_order(std::string_view text);
std::string to_string(NormOrder order);

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void append_row(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Run parameters shared by every stage of the pipeline.
struct Config {
  double rho = 1.0;                  // Wasserstein order, >= 1
  NormOrder norm_order = NormOrder::l2;
  double beta = 1e-6;                // global confidence level in (0, 1)
  std::size_t dimension = 2;
  std::uint64_t rng_seed = 0;
  double neighbor_fraction = 0.05;   // radius-growth neighbor rank, as a fraction of M

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// ||x - y||_m. Throws std::invalid_argument on dimension mismatch.
double norm(std::span<const double> x, std::span<const double> y, NormOrder order);

/// Axis-aligned L_inf ball: the assumed support of the unknown distribution.
class SupportBox {
 public:
  SupportBox(std::vector<double> center, double half_width = 0.5);
  /// Unit box [-0.5, 0.5]^d.
  static SupportBox unit(std::size_t dimension);

  const std::vector<double>& center() const { return center_; }
  double half_width() const { return half_width_; }
  std::size_t dimension() const { return center_.size(); }

  bool contains(std::span<const double> x, double tolerance = 0.0) const;
  /// Largest L_m distance between two points of the box.
  double diameter(NormOrder order) const;
  double lower(std::size_t axis) const { return center_[axis] - half_width_; }
  double upper(std::size_t axis) const { return center_[axis] + half_width_; }

 private:
  std::vector<double> center_;
  double half_width_;
};

enum class DatasetRole { training, estimation };

/// N x d sample matrix.
class Dataset {
 public:
  Dataset(Matrix points, DatasetRole role = DatasetRole::estimation);

  const Matrix& points() const { return points_; }
  std::size_t size() const { return points_.rows(); }
  std::size_t dimension() const { return points_.cols(); }
  DatasetRole role() const { return role_; }
  Dataset with_role(DatasetRole role) const { return Dataset(points_, role); }

  /// Throws std::invalid_argument naming the first sample outside `box`.
  void require_inside(const SupportBox& box) const;

 private:
  Matrix points_;
  DatasetRole role_;
};

/// Finitely supported probability distribution sum_i w_i delta_{c_i}.
class DiscreteDistribution {
 public:
  /// Weights must be nonnegative and sum to 1 within 1e-9; they are then
  /// renormalized so the sum is 1 within 1e-12.
  DiscreteDistribution(Matrix support, std::vector<double> weights);

  const Matrix& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  std::size_t dimension() const { return support_.cols(); }

  /// Copy without zero-weight atoms.
  DiscreteDistribution without_empty_atoms() const;

 private:
  Matrix support_;
  std::vector<double> weights_;
};

}  // namespace wcert
