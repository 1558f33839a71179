#pragma once

// Exact (Clopper-Pearson) binomial confidence intervals for region masses.

#include <cstdint>
#include <span>
#include <vector>

namespace wcert {

/// P(X >= count) for X ~ Binomial(trials, p).
double binomial_upper_tail(std::int64_t count, std::int64_t trials, double p);
/// P(X <= count) for X ~ Binomial(trials, p).
double binomial_lower_tail(std::int64_t count, std::int64_t trials, double p);

/// Lower Clopper-Pearson limit: 0 if count == 0, otherwise the p with
/// P(X >= count; p) = alpha.
double cp_lower(std::int64_t count, std::int64_t trials, double alpha);

/// Upper Clopper-Pearson limit: 1 if count == trials, otherwise the p with
/// P(X <= count; p) = alpha.
double cp_upper(std::int64_t count, std::int64_t trials, double alpha);

/// Per-region mass intervals holding simultaneously with probability >= 1 - beta.
struct ProbabilityBox {
  std::vector<double> lower;
  std::vector<double> upper;
  double per_region_alpha = 0.0;  // beta / (2M)

  std::size_t size() const { return lower.size(); }
  bool contains(std::span<const double> pi, double tolerance = 1e-12) const;
  /// sum(lower) <= 1 <= sum(upper), within tolerance.
  bool feasible(double tolerance = 1e-12) const;
};

ProbabilityBox build_probability_box(std::span<const std::int64_t> counts, std::int64_t trials, double beta);

}  // namespace wcert
