#pragma once

// Synthetic generators, CSV ingestion and support-box normalization.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/core.hpp"

namespace wcert {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct GaussianComponent {
  std::vector<double> mean;
  double sigma = 0.1;
  double weight = 1.0;
};

/// N(center, sigma^2 I) conditioned on the box, by rejection. Throws
/// std::invalid_argument if the acceptance probability is below 1e-4.
Dataset gen_truncated_gaussian(std::size_t n, std::size_t d, double sigma, const SupportBox& box, std::uint64_t seed);

/// Uniform on the L_inf ball of the given diameter around the box center.
Dataset gen_uniform(std::size_t n, std::size_t d, double diameter, const SupportBox& box, std::uint64_t seed);

/// Gaussian mixture conditioned on the box (a draw outside is redrawn,
/// component choice included).
Dataset gen_gaussian_mixture(std::size_t n, std::size_t d, const std::vector<GaussianComponent>& components,
                             const SupportBox& box, std::uint64_t seed);

/// Two equal-weight components at +-0.2 on every axis, sigma 0.05.
std::vector<GaussianComponent> default_mixture(std::size_t d);

/// Mass of the untruncated N(center, sigma^2 I) inside the box.
double gaussian_box_mass(double sigma, const SupportBox& box);
/// Sigma whose untruncated Gaussian puts `mass` inside the box.
double sigma_for_box_mass(double mass, const SupportBox& box);
/// L_inf diameter of a centered sub-box whose volume is `ratio` times the box volume.
double uniform_diameter_for_volume_ratio(double ratio, const SupportBox& box);

/// Header row, then one sample per row with a fixed number of numeric columns.
Dataset load_csv(const std::string& path, DatasetRole role = DatasetRole::estimation);
void save_csv(const Dataset& data, const std::string& path);

/// x -> scale .* x + offset, per coordinate.
struct AffineMap {
  std::vector<double> scale;
  std::vector<double> offset;

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> inverse(std::span<const double> y) const;
  /// Largest stretch of the inverse map: distances in normalized units times
  /// this factor bound the distances in original units.
  double original_units_factor() const;
  bool is_identity() const;
};

struct NormalizedData {
  Dataset data;
  AffineMap map;
};

/// Identity if every sample already lies in the target box; otherwise maps
/// each coordinate's observed [min, max] onto the box shrunk by a 1% margin.
NormalizedData normalize_to_box(const Dataset& data, const SupportBox& target);
/// Applies a previously fitted map (e.g. the training map to estimation data).
Dataset apply_map(const Dataset& data, const AffineMap& map);

}  // namespace wcert
