#pragma once

// Certified upper bounds on W_rho(P, P_hat).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcert/core.hpp"
#include "wcert/lp.hpp"
#include "wcert/stats.hpp"

namespace wcert {

enum class BoundMethod { theorem1, prop2, analytic, fournier };

std::string to_string(BoundMethod method);
BoundMethod parse_bound_method(std::string_view text);

/// Inputs shared by the optimization-based bounds.
struct BoundProblem {
  Matrix cost;             // M x M region-to-representative cost upper bounds
  std::vector<double> pi;  // clusterized empirical weights
  ProbabilityBox box;      // per-region mass intervals
  double rho = 1.0;
  Matrix support;          // representatives c_i (only needed for prop2)
  NormOrder norm_order = NormOrder::l2;

  std::size_t size() const { return pi.size(); }
  /// Throws std::invalid_argument on shape errors, negative costs, pi outside
  /// the box, or an infeasible box.
  void validate() const;
};

/// A vertex of {z : p_l <= z <= p_u, sum z = 1}.
struct VertexDecomposition {
  std::vector<double> v;
  std::vector<std::size_t> lower_set;  // v_i = p_l
  std::vector<std::size_t> upper_set;  // v_j = p_u
  std::optional<std::size_t> free_index;
  double distance = 0.0;               // ||v - pi||_m
  bool exact = true;                   // false when the search budget ran out
};

struct BoundResult {
  double value = 0.0;
  BoundMethod method = BoundMethod::theorem1;
  std::map<std::string, double> components;
  SolveReport report;
};

/// Raised when a solve stops on its node or time limit; the bound would not be certified.
class SolverLimitError : public std::runtime_error {
 public:
  SolverLimitError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

struct BoundOptions {
  MilpOptions milp;
  std::uint64_t vertex_node_budget = 2'000'000;
};

/// Mass-shift epsilon: exact optimum of the mass-shifting MILP, raised to 1/rho.
BoundResult epsilon_theorem1(const BoundProblem& prob, const BoundOptions& options = {});

/// Vertex of the box-constrained simplex closest to pi in the L_m norm.
/// Exact depth-first search over bound assignments, seeded with the
/// gap-sorting construction; see VertexDecomposition::exact.
VertexDecomposition closest_vertex(std::span<const double> pi, const ProbabilityBox& box, NormOrder order,
                                   std::uint64_t node_budget = 2'000'000);

/// The gap-sorting construction alone: start at p_l and raise coordinates to
/// p_u in ascending order of |pi_i - p_u|^m - |pi_i - p_l|^m until the sum is 1.
VertexDecomposition sorted_gap_vertex(std::span<const double> pi, const ProbabilityBox& box, NormOrder order);

/// The one-binary program for xi^rho given a vertex, in the same reduced form
/// as theorem1_model (pi replaced by v).
MilpModel xi_model(const BoundProblem& prob, const VertexDecomposition& vertex, double* constant_term);

/// Vertex composite: W_rho(sum v_i delta_{c_i}, P_hat) + xi.
BoundResult xi_prop2(const BoundProblem& prob, const Config& cfg, const BoundOptions& options = {});

/// (sum cost_ii p_u + diameter^rho sum (p_u - p_l))^(1/rho).
BoundResult analytic_bound(const BoundProblem& prob, double diameter);

/// E_rho + diameter * (2 log(1/beta) / N)^(1/(2 rho)).
BoundResult fournier_baseline(std::int64_t N, double beta, const Config& cfg, double diameter,
                              double moment_constant);

/// The reduced mass-shifting model behind epsilon_theorem1 (exposed for tests).
/// Variables: flows f_ij (i != j, positive gain), then slacks, then one
/// binary per region; objective excludes the constant sum cost_ii pi_i.
MilpModel theorem1_model(const BoundProblem& prob, double* constant_term);

}  // namespace wcert
