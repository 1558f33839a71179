#pragma once

// Small exact LP / transportation / MILP engine.
//
// Linear programs are stated in equality form: objective c, rows a_r x = b_r
// and per-variable bounds 0 <= lo <= x <= hi (hi may be +infinity).
// Inequalities are expressed by the caller through explicit slack columns.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wcert/core.hpp"

namespace wcert {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { maximize, minimize };

enum class SolveStatus { optimal, infeasible, unbounded, node_limit, time_limit };

std::string to_string(SolveStatus status);

struct LinearProgram {
  struct Term {
    std::size_t index;
    double value;
  };
  /// Sparse equality row sum_k value_k x_{index_k} = rhs.
  struct Row {
    std::vector<Term> terms;
    double rhs = 0.0;
  };

  std::vector<double> objective;
  Sense sense = Sense::maximize;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_variables() const { return objective.size(); }

  /// Appends a variable with the given cost and bounds; returns its index.
  std::size_t add_variable(double cost, double lo = 0.0, double hi = kInfinity);
  /// Appends a row given as a dense coefficient vector (zeros dropped).
  void add_dense_row(std::span<const double> coefficients, double rhs);

  /// Throws std::invalid_argument if rows reference unknown variables or
  /// bounds are inconsistent.
  void validate() const;
};

struct SolveReport {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  std::vector<double> solution;
  /// Row duals y of the final basis (same sense as the objective), for LPs.
  std::vector<double> duals;
  std::uint64_t nodes = 0;
  std::uint64_t iterations = 0;
  double wall_ms = 0.0;

  bool optimal() const { return status == SolveStatus::optimal; }
};

struct LpOptions {
  std::uint64_t iteration_limit = 5'000'000;
};

SolveReport solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Minimum-cost transportation plan, row-major k x l in `solution`.
/// Supplies and demands must balance within 1e-9.
SolveReport solve_transportation(std::span<const double> supply, std::span<const double> demand, const Matrix& cost);

struct MilpModel {
  LinearProgram base;
  std::vector<std::size_t> binary_indices;

  void validate() const;
};

struct MilpOptions {
  std::uint64_t node_limit = 1'000'000;
  /// Binary variables not fixed by their bounds; larger models are rejected.
  std::size_t max_free_binaries = 128;
  std::optional<double> time_limit_s;
  double integrality_tolerance = 1e-9;
  double prune_tolerance = 1e-9;
};

/// Exact best-first branch and bound for maximization models.
/// On node or time limit the report carries the best incumbent found.
SolveReport solve_max_milp(const MilpModel& model, const MilpOptions& options = {});

}  // namespace wcert
