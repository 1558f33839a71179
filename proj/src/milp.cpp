#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>
#include <vector>

#include "simplex_engine.hpp"
#include "wcert/lp.hpp"

namespace wcert {
namespace {

using detail::Basis;
using detail::SimplexEngine;
using Clock = std::chrono::steady_clock;

// Nodes store only the binaries fixed along their path; bounds of every
// other binary revert to the root values.
struct Node {
  std::vector<std::pair<std::size_t, double>> fixes;
  double bound = 0.0;
  std::size_t depth = 0;
  std::uint64_t sequence = 0;
  std::shared_ptr<const Basis> parent_basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.sequence > b.sequence;
  }
};

constexpr std::uint64_t kHeuristicInterval = 50;

}  // namespace

void MilpModel::validate() const {
  base.validate();
  for (std::size_t idx : binary_indices) {
    if (idx >= base.num_variables()) throw std::invalid_argument("MilpModel: binary index out of range");
    if (base.lower[idx] < 0.0 || base.upper[idx] > 1.0)
      throw std::invalid_argument("MilpModel: binary variable bounds must lie within [0, 1]");
  }
}

SolveReport solve_max_milp(const MilpModel& model, const MilpOptions& options) {
  const auto start = Clock::now();
  model.validate();
  if (model.base.sense != Sense::maximize) throw std::invalid_argument("solve_max_milp: model must maximize");

  std::vector<std::size_t> free_binaries;
  std::vector<double> root_lo;
  std::vector<double> root_hi;
  for (std::size_t idx : model.binary_indices) {
    // Integral bounds inside [0, 1]: either fixed to 0, fixed to 1, or free.
    const double lo = std::ceil(model.base.lower[idx] - options.integrality_tolerance);
    const double hi = std::floor(model.base.upper[idx] + options.integrality_tolerance);
    if (lo > hi) {
      SolveReport report;
      report.status = SolveStatus::infeasible;
      return report;
    }
    if (lo < hi) free_binaries.push_back(idx);
    root_lo.push_back(lo);
    root_hi.push_back(hi);
  }
  if (free_binaries.size() > options.max_free_binaries)
    throw std::invalid_argument("solve_max_milp: " + std::to_string(free_binaries.size()) +
                                " free binary variables exceed the limit of " +
                                std::to_string(options.max_free_binaries));

  SimplexEngine engine(model.base);
  for (std::size_t k = 0; k < model.binary_indices.size(); ++k)
    engine.set_bounds(model.binary_indices[k], root_lo[k], root_hi[k]);

  SolveReport report;
  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.iterations = engine.iterations();
    report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
  };

  const SolveStatus root_status = engine.solve_primal();
  report.nodes = 1;
  if (root_status != SolveStatus::optimal) return finish(root_status);

  double incumbent = -kInfinity;
  bool have_incumbent = false;
  std::vector<double> incumbent_solution;
  auto fractional_index = [&](const std::vector<double>& x) {
    std::size_t best = free_binaries.size();
    double best_gap = options.integrality_tolerance;
    for (std::size_t k = 0; k < free_binaries.size(); ++k) {
      const double v = x[free_binaries[k]];
      const double gap = std::min(v - std::floor(v), std::ceil(v) - v);
      if (gap > best_gap + 1e-15) {
        best_gap = gap;
        best = k;
      }
    }
    return best;
  };

  auto apply_fixes = [&](const std::vector<std::pair<std::size_t, double>>& fixes) {
    for (std::size_t k = 0; k < model.binary_indices.size(); ++k)
      engine.set_bounds(model.binary_indices[k], root_lo[k], root_hi[k]);
    for (const auto& [idx, value] : fixes) engine.set_bounds(idx, value, value);
  };

  // Fix every free binary to its rounded value and re-solve; used as a
  // primal heuristic.
  std::shared_ptr<const Basis> engine_basis;
  auto try_rounding = [&](const std::vector<double>& x, const std::vector<std::pair<std::size_t, double>>& fixes) {
    std::vector<std::pair<std::size_t, double>> rounded = fixes;
    for (std::size_t idx : free_binaries) rounded.emplace_back(idx, x[idx] >= 0.5 ? 1.0 : 0.0);
    apply_fixes(rounded);
    engine_basis.reset();
    if (engine.reoptimize_dual() != SolveStatus::optimal) return;
    const double value = engine.objective();
    if (value > incumbent) {
      have_incumbent = true;
      incumbent = value;
      incumbent_solution = engine.primal();
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t sequence = 0;
  std::uint64_t processed = 0;

  // Handles the LP optimum currently held by the engine for `node`.
  auto process = [&](const Node& node) {
    const double value = engine.objective();
    if (value <= incumbent + options.prune_tolerance) return;
    std::vector<double> x = engine.primal();
    const std::size_t branch = fractional_index(x);
    if (branch == free_binaries.size()) {
      have_incumbent = true;
      incumbent = value;
      incumbent_solution = std::move(x);
      return;
    }
    auto snapshot = std::make_shared<const Basis>(engine.basis());
    engine_basis = snapshot;
    const std::size_t idx = free_binaries[branch];
    for (double side : {1.0, 0.0}) {
      Node child;
      child.fixes = node.fixes;
      child.fixes.emplace_back(idx, side);
      child.bound = value;
      child.depth = node.depth + 1;
      child.sequence = sequence++;
      child.parent_basis = snapshot;
      open.push(std::move(child));
    }
    if (processed == 1 || processed % kHeuristicInterval == 0) try_rounding(x, node.fixes);
  };

  processed = 1;
  process(Node{});

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound <= incumbent + options.prune_tolerance) break;
    if (processed >= options.node_limit) {
      report.nodes = processed;
      report.objective = incumbent;
      report.solution = incumbent_solution;
      return finish(SolveStatus::node_limit);
    }
    if (options.time_limit_s) {
      const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      if (elapsed > *options.time_limit_s) {
        report.nodes = processed;
        report.objective = incumbent;
        report.solution = incumbent_solution;
        return finish(SolveStatus::time_limit);
      }
    }
    ++processed;
    if (engine_basis != node.parent_basis) engine.load_basis(*node.parent_basis);
    apply_fixes(node.fixes);
    engine_basis.reset();
    const SolveStatus status = engine.reoptimize_dual();
    if (status == SolveStatus::optimal) process(node);
  }

  report.nodes = processed;
  if (!have_incumbent) return finish(SolveStatus::infeasible);
  report.objective = incumbent;
  report.solution = std::move(incumbent_solution);
  return finish(SolveStatus::optimal);
}

}  // namespace wcert
