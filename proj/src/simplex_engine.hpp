#pragma once

// Bounded-variable revised simplex with an explicit dense basis inverse.
// Internal to the solver module; shared by solve_lp and solve_max_milp.

#include <cstdint>
#include <vector>

#include "wcert/lp.hpp"

namespace wcert::detail {

enum class VarState : std::uint8_t { basic, at_lower, at_upper };

struct Basis {
  std::vector<std::size_t> header;
  std::vector<VarState> state;
};

class SimplexEngine {
 public:
  explicit SimplexEngine(const LinearProgram& lp, std::uint64_t iteration_limit = 5'000'000);

  /// Cold two-phase primal solve from the slack/artificial basis.
  SolveStatus solve_primal();
  /// Re-solve after bound changes, starting from the current (dual feasible) basis.
  SolveStatus reoptimize_dual();

  void set_bounds(std::size_t var, double lo, double hi);
  double lower_bound(std::size_t var) const { return lo_[var]; }
  double upper_bound(std::size_t var) const { return hi_[var]; }

  Basis basis() const { return {header_, state_}; }
  void load_basis(const Basis& basis);

  /// Objective in the sense of the original program.
  double objective() const;
  std::vector<double> primal() const;
  /// Row duals in the sense of the original program, one per original row.
  std::vector<double> duals() const;
  std::uint64_t iterations() const { return iterations_; }
  /// True when presolve proved the equality system inconsistent.
  bool rows_inconsistent() const { return inconsistent_; }

 private:
  enum class Pricing { dantzig, bland };

  void remove_redundant_rows(const LinearProgram& lp);
  void refactor();
  void recompute_basic_values();
  void compute_duals(const std::vector<double>& cost, std::vector<double>& y) const;
  double reduced_cost(std::size_t j, const std::vector<double>& cost, const std::vector<double>& y) const;
  void column(std::size_t j, std::vector<double>& out) const;
  void pivot(std::size_t row, std::size_t entering, const std::vector<double>& alpha);
  SolveStatus run_primal(const std::vector<double>& cost);
  bool drive_out_artificials();
  bool is_fixed(std::size_t j) const { return hi_[j] - lo_[j] <= 0.0; }
  double nonbasic_value(std::size_t j) const;

  bool maximize_ = true;
  bool inconsistent_ = false;
  std::size_t num_rows_original_ = 0;
  std::vector<std::size_t> kept_rows_;  // original row index of each internal row
  std::size_t m_ = 0;                   // internal rows
  std::size_t n_ = 0;                   // structural columns
  std::size_t total_ = 0;               // structural + artificial columns

  // Column-compressed constraint matrix (structural columns, then artificials).
  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> row_index_;
  std::vector<double> values_;

  std::vector<double> b_;
  std::vector<double> cost_;  // minimization form
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> header_;
  std::vector<double> binv_;  // m x m, row-major

  std::uint64_t iterations_ = 0;
  std::uint64_t iteration_limit_;
  std::uint64_t pivots_since_refactor_ = 0;
};

}  // namespace wcert::detail
