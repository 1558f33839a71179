#pragma once

// End-to-end certification: partition from training data, weights and mass
// intervals from estimation data, then the selected bound.

#include <cstdint>
#include <vector>

#include "wcert/bounds.hpp"
#include "wcert/partition.hpp"

namespace wcert {

struct Certificate {
  Partition partition;
  DiscreteDistribution approximation;
  std::vector<std::int64_t> counts;
  BoundProblem problem;
  BoundResult bound;
};

/// Weights, Clopper-Pearson box and cost upper bounds for `data` on `part`.
BoundProblem make_bound_problem(const Partition& part, const Dataset& data, const Config& cfg,
                                std::vector<std::int64_t>* counts = nullptr);

/// Runs theorem1, prop2 or analytic (the analytic bound uses the L_m diameter
/// of `box`). The Fournier baseline needs no partition; call
/// fournier_baseline directly.
Certificate certify(const Dataset& train, const Dataset& data, std::size_t M, const Config& cfg,
                    const SupportBox& box, BoundMethod method, const BoundOptions& options = {});

}  // namespace wcert
