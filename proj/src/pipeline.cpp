#include "wcert/pipeline.hpp"

#include <stdexcept>

#include "wcert/stats.hpp"

namespace wcert {

BoundProblem make_bound_problem(const Partition& part, const Dataset& data, const Config& cfg,
                                std::vector<std::int64_t>* counts) {
  cfg.validate();
  if (data.dimension() != part.dimension()) throw std::invalid_argument("make_bound_problem: dimension mismatch");
  const std::vector<std::int64_t> region = region_counts(part, data);
  const DiscreteDistribution phat = assign_weights(part, data);
  BoundProblem prob;
  prob.cost = cost_upper_matrix(part, cfg);
  prob.pi = phat.weights();
  prob.box = build_probability_box(region, static_cast<std::int64_t>(data.size()), cfg.beta);
  prob.rho = cfg.rho;
  prob.support = phat.support();
  prob.norm_order = part.norm_order();
  if (counts) *counts = region;
  return prob;
}

Certificate certify(const Dataset& train, const Dataset& data, std::size_t M, const Config& cfg,
                    const SupportBox& box, BoundMethod method, const BoundOptions& options) {
  if (method == BoundMethod::fournier)
    throw std::invalid_argument("certify: the Fournier baseline does not use a partition");
  data.require_inside(box);
  Partition part = build_partition(train, M, cfg, box);
  std::vector<std::int64_t> counts;
  BoundProblem prob = make_bound_problem(part, data, cfg, &counts);
  DiscreteDistribution phat(prob.support, prob.pi);
  BoundResult bound;
  switch (method) {
    case BoundMethod::theorem1: bound = epsilon_theorem1(prob, options); break;
    case BoundMethod::prop2: bound = xi_prop2(prob, cfg, options); break;
    case BoundMethod::analytic: bound = analytic_bound(prob, box.diameter(cfg.norm_order)); break;
    case BoundMethod::fournier: break;
  }
  return Certificate{std::move(part), std::move(phat), std::move(counts), std::move(prob), std::move(bound)};
}

}  // namespace wcert
