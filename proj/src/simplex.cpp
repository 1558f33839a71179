#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "simplex_engine.hpp"
#include "wcert/lp.hpp"

namespace wcert {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kRankTol = 1e-10;
constexpr double kTieTol = 1e-12;
constexpr int kDegenerateLimit = 50;
constexpr std::uint64_t kRefactorInterval = 100;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::node_limit: return "node_limit";
    case SolveStatus::time_limit: return "time_limit";
  }
  return "unknown";
}

std::size_t LinearProgram::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

void LinearProgram::add_dense_row(std::span<const double> coefficients, double rhs) {
  Row row;
  row.rhs = rhs;
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    if (coefficients[j] != 0.0) row.terms.push_back({j, coefficients[j]});
  rows.push_back(std::move(row));
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("LinearProgram: bound vectors must match the objective length");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw std::invalid_argument("LinearProgram: non-finite objective coefficient");
    if (!std::isfinite(lower[j]) || lower[j] < 0.0)
      throw std::invalid_argument("LinearProgram: lower bounds must be finite and >= 0");
    if (!(upper[j] >= lower[j])) throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
  }
  for (const Row& row : rows) {
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("LinearProgram: non-finite right-hand side");
    for (const Term& t : row.terms) {
      if (t.index >= n) throw std::invalid_argument("LinearProgram: row references an unknown variable");
      if (!std::isfinite(t.value)) throw std::invalid_argument("LinearProgram: non-finite coefficient");
    }
  }
}

namespace detail {

SimplexEngine::SimplexEngine(const LinearProgram& lp, std::uint64_t iteration_limit)
    : iteration_limit_(iteration_limit) {
  lp.validate();
  maximize_ = lp.sense == Sense::maximize;
  n_ = lp.num_variables();
  num_rows_original_ = lp.rows.size();
  remove_redundant_rows(lp);
  m_ = kept_rows_.size();
  total_ = n_ + m_;

  std::vector<std::vector<std::pair<std::size_t, double>>> columns(n_);
  for (std::size_t r = 0; r < m_; ++r)
    for (const auto& t : lp.rows[kept_rows_[r]].terms)
      if (t.value != 0.0) columns[t.index].emplace_back(r, t.value);

  col_start_.assign(total_ + 1, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    auto& col = columns[j];
    std::sort(col.begin(), col.end());
    std::size_t out = 0;
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (out > 0 && col[out - 1].first == col[k].first) col[out - 1].second += col[k].second;
      else col[out++] = col[k];
    }
    col.resize(out);
    for (const auto& [r, v] : col) {
      if (v == 0.0) continue;
      row_index_.push_back(r);
      values_.push_back(v);
    }
    col_start_[j + 1] = row_index_.size();
  }
  for (std::size_t r = 0; r < m_; ++r) {
    row_index_.push_back(r);
    values_.push_back(1.0);
    col_start_[n_ + r + 1] = row_index_.size();
  }

  b_.resize(m_);
  for (std::size_t r = 0; r < m_; ++r) b_[r] = lp.rows[kept_rows_[r]].rhs;
  cost_.assign(total_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) cost_[j] = maximize_ ? -lp.objective[j] : lp.objective[j];
  lo_.assign(total_, 0.0);
  hi_.assign(total_, kInfinity);
  for (std::size_t j = 0; j < n_; ++j) {
    lo_[j] = lp.lower[j];
    hi_[j] = lp.upper[j];
  }
  x_.assign(total_, 0.0);
  state_.assign(total_, VarState::at_lower);
  header_.resize(m_);
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    header_[r] = n_ + r;
    state_[n_ + r] = VarState::basic;
    binv_[r * m_ + r] = 1.0;
  }
  for (std::size_t j = 0; j < n_; ++j) x_[j] = lo_[j];
}

// Rows owning a column that appears in no other row are linearly independent
// of everything else; only the remaining rows go through dense elimination.
void SimplexEngine::remove_redundant_rows(const LinearProgram& lp) {
  const std::size_t rows = lp.rows.size();
  std::vector<std::size_t> occurrences(n_, 0);
  std::vector<std::size_t> last_row(n_, kNone);
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& t : lp.rows[r].terms) {
      if (t.value == 0.0 || last_row[t.index] == r) continue;
      last_row[t.index] = r;
      ++occurrences[t.index];
    }
  }
  std::vector<bool> keep(rows, false);
  std::vector<std::size_t> candidates;
  for (std::size_t r = 0; r < rows; ++r) {
    bool singleton = false;
    for (const auto& t : lp.rows[r].terms)
      if (t.value != 0.0 && occurrences[t.index] == 1) singleton = true;
    if (singleton) keep[r] = true;
    else candidates.push_back(r);
  }

  if (!candidates.empty()) {
    const std::size_t p = candidates.size();
    std::vector<double> dense(p * n_, 0.0);
    std::vector<double> rhs(p);
    for (std::size_t k = 0; k < p; ++k) {
      const auto& row = lp.rows[candidates[k]];
      for (const auto& t : row.terms) dense[k * n_ + t.index] += t.value;
      double scale = 0.0;
      for (std::size_t j = 0; j < n_; ++j) scale = std::max(scale, std::abs(dense[k * n_ + j]));
      rhs[k] = row.rhs;
      if (scale > 0.0) {
        for (std::size_t j = 0; j < n_; ++j) dense[k * n_ + j] /= scale;
        rhs[k] /= scale;
      }
    }
    std::vector<bool> pivoted(p, false);
    std::size_t pivots = 0;
    for (std::size_t j = 0; j < n_ && pivots < p; ++j) {
      std::size_t best = kNone;
      double best_abs = kRankTol;
      for (std::size_t k = 0; k < p; ++k) {
        if (pivoted[k]) continue;
        const double a = std::abs(dense[k * n_ + j]);
        if (a > best_abs) {
          best_abs = a;
          best = k;
        }
      }
      if (best == kNone) continue;
      pivoted[best] = true;
      ++pivots;
      const double piv = dense[best * n_ + j];
      for (std::size_t k = 0; k < p; ++k) {
        if (pivoted[k]) continue;
        const double f = dense[k * n_ + j] / piv;
        if (f == 0.0) continue;
        for (std::size_t c = j; c < n_; ++c) dense[k * n_ + c] -= f * dense[best * n_ + c];
        rhs[k] -= f * rhs[best];
      }
    }
    for (std::size_t k = 0; k < p; ++k) {
      if (pivoted[k]) keep[candidates[k]] = true;
      else if (std::abs(rhs[k]) > kFeasTol) inconsistent_ = true;
    }
  }
  for (std::size_t r = 0; r < rows; ++r)
    if (keep[r]) kept_rows_.push_back(r);
}

double SimplexEngine::nonbasic_value(std::size_t j) const {
  return state_[j] == VarState::at_upper ? hi_[j] : lo_[j];
}

void SimplexEngine::column(std::size_t j, std::vector<double>& out) const {
  out.assign(m_, 0.0);
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    const std::size_t i = row_index_[k];
    const double v = values_[k];
    for (std::size_t r = 0; r < m_; ++r) out[r] += binv_[r * m_ + i] * v;
  }
}

void SimplexEngine::compute_duals(const std::vector<double>& cost, std::vector<double>& y) const {
  y.assign(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double c = cost[header_[r]];
    if (c == 0.0) continue;
    const double* row = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) y[i] += c * row[i];
  }
}

double SimplexEngine::reduced_cost(std::size_t j, const std::vector<double>& cost,
                                   const std::vector<double>& y) const {
  double d = cost[j];
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) d -= y[row_index_[k]] * values_[k];
  return d;
}

void SimplexEngine::pivot(std::size_t row, std::size_t entering, const std::vector<double>& alpha) {
  header_[row] = entering;
  state_[entering] = VarState::basic;
  const double piv = alpha[row];
  double* prow = &binv_[row * m_];
  for (std::size_t i = 0; i < m_; ++i) prow[i] /= piv;
  for (std::size_t r = 0; r < m_; ++r) {
    if (r == row) continue;
    const double f = alpha[r];
    if (f == 0.0) continue;
    double* target = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) target[i] -= f * prow[i];
  }
  ++pivots_since_refactor_;
}

void SimplexEngine::refactor() {
  pivots_since_refactor_ = 0;
  if (m_ == 0) return;
  std::vector<double> basis(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = header_[r];
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) basis[row_index_[k] * m_ + r] = values_[k];
  }
  std::vector<double>& inv = binv_;
  inv.assign(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) inv[r * m_ + r] = 1.0;
  for (std::size_t c = 0; c < m_; ++c) {
    std::size_t best = c;
    for (std::size_t r = c + 1; r < m_; ++r)
      if (std::abs(basis[r * m_ + c]) > std::abs(basis[best * m_ + c])) best = r;
    if (std::abs(basis[best * m_ + c]) < 1e-13) throw std::runtime_error("simplex: singular basis matrix");
    if (best != c) {
      for (std::size_t i = 0; i < m_; ++i) {
        std::swap(basis[best * m_ + i], basis[c * m_ + i]);
        std::swap(inv[best * m_ + i], inv[c * m_ + i]);
      }
    }
    const double piv = basis[c * m_ + c];
    for (std::size_t i = 0; i < m_; ++i) {
      basis[c * m_ + i] /= piv;
      inv[c * m_ + i] /= piv;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == c) continue;
      const double f = basis[r * m_ + c];
      if (f == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        basis[r * m_ + i] -= f * basis[c * m_ + i];
        inv[r * m_ + i] -= f * inv[c * m_ + i];
      }
    }
  }
}

void SimplexEngine::recompute_basic_values() {
  std::vector<double> rhs = b_;
  for (std::size_t j = 0; j < total_; ++j) {
    if (state_[j] == VarState::basic) continue;
    x_[j] = nonbasic_value(j);
    if (x_[j] == 0.0) continue;
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) rhs[row_index_[k]] -= values_[k] * x_[j];
  }
  for (std::size_t r = 0; r < m_; ++r) {
    double v = 0.0;
    const double* row = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) v += row[i] * rhs[i];
    x_[header_[r]] = v;
  }
}

SolveStatus SimplexEngine::run_primal(const std::vector<double>& cost) {
  Pricing pricing = Pricing::dantzig;
  int degenerate_run = 0;
  std::vector<double> y;
  std::vector<double> alpha;
  for (;;) {
    if (iterations_ >= iteration_limit_) throw std::runtime_error("simplex: iteration limit reached");
    if (pivots_since_refactor_ >= kRefactorInterval) {
      refactor();
      recompute_basic_values();
    }
    compute_duals(cost, y);

    std::size_t entering = kNone;
    double best_score = 0.0;
    for (std::size_t j = 0; j < total_; ++j) {
      if (state_[j] == VarState::basic || is_fixed(j)) continue;
      const double d = reduced_cost(j, cost, y);
      double score = 0.0;
      if (state_[j] == VarState::at_lower && d < -kOptTol) score = -d;
      else if (state_[j] == VarState::at_upper && d > kOptTol) score = d;
      else continue;
      if (pricing == Pricing::bland) {
        entering = j;
        break;
      }
      if (score > best_score) {
        best_score = score;
        entering = j;
      }
    }
    if (entering == kNone) {
      if (pivots_since_refactor_ == 0) return SolveStatus::optimal;
      // Confirm optimality on a fresh factorization.
      refactor();
      recompute_basic_values();
      continue;
    }

    const double dir = state_[entering] == VarState::at_lower ? 1.0 : -1.0;
    column(entering, alpha);

    double theta = hi_[entering] - lo_[entering];
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = dir * alpha[r];
      if (std::abs(a) <= kPivotTol) continue;
      const std::size_t bv = header_[r];
      double limit;
      if (a > 0.0) limit = (x_[bv] - lo_[bv]) / a;
      else if (std::isfinite(hi_[bv])) limit = (hi_[bv] - x_[bv]) / -a;
      else continue;
      theta = std::min(theta, std::max(limit, 0.0));
    }
    if (!std::isfinite(theta)) return SolveStatus::unbounded;

    std::size_t leave = kNone;
    const bool flip = hi_[entering] - lo_[entering] <= theta + kTieTol;
    if (!flip) {
      double best_pivot = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = dir * alpha[r];
        if (std::abs(a) <= kPivotTol) continue;
        const std::size_t bv = header_[r];
        double limit;
        if (a > 0.0) limit = (x_[bv] - lo_[bv]) / a;
        else if (std::isfinite(hi_[bv])) limit = (hi_[bv] - x_[bv]) / -a;
        else continue;
        if (std::max(limit, 0.0) > theta + kTieTol) continue;
        if (pricing == Pricing::bland) {
          if (leave == kNone || bv < header_[leave]) leave = r;
        } else if (std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          leave = r;
        }
      }
    }

    ++iterations_;
    x_[entering] += dir * theta;
    for (std::size_t r = 0; r < m_; ++r) x_[header_[r]] -= dir * theta * alpha[r];

    if (flip || leave == kNone) {
      state_[entering] = state_[entering] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
      x_[entering] = nonbasic_value(entering);
    } else {
      const std::size_t bv = header_[leave];
      const bool to_lower = dir * alpha[leave] > 0.0;
      state_[bv] = to_lower ? VarState::at_lower : VarState::at_upper;
      if (bv >= n_) {
        // An artificial that leaves never returns.
        hi_[bv] = 0.0;
        state_[bv] = VarState::at_lower;
      }
      x_[bv] = nonbasic_value(bv);
      pivot(leave, entering, alpha);
    }

    if (theta <= kTieTol) {
      if (++degenerate_run > kDegenerateLimit) pricing = Pricing::bland;
    } else {
      degenerate_run = 0;
      pricing = Pricing::dantzig;
    }
  }
}

bool SimplexEngine::drive_out_artificials() {
  bool redundant = false;
  std::vector<double> alpha;
  for (std::size_t r = 0; r < m_; ++r) {
    if (header_[r] < n_) continue;
    const double* row = &binv_[r * m_];
    std::size_t best = kNone;
    double best_abs = kPivotTol;
    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] == VarState::basic) continue;
      double a = 0.0;
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) a += row[row_index_[k]] * values_[k];
      if (std::abs(a) > best_abs) {
        best_abs = std::abs(a);
        best = j;
      }
    }
    const std::size_t art = header_[r];
    if (best == kNone) {
      redundant = true;
      continue;
    }
    column(best, alpha);
    state_[art] = VarState::at_lower;
    pivot(r, best, alpha);
  }
  for (std::size_t j = n_; j < total_; ++j) hi_[j] = 0.0;
  refactor();
  recompute_basic_values();
  return redundant;
}

SolveStatus SimplexEngine::solve_primal() {
  if (inconsistent_) return SolveStatus::infeasible;
  for (std::size_t j = 0; j < n_; ++j) {
    state_[j] = VarState::at_lower;
    x_[j] = lo_[j];
  }
  std::vector<double> residual = b_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (x_[j] == 0.0) continue;
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) residual[row_index_[k]] -= values_[k] * x_[j];
  }

  // Crash basis: use a singleton structural column where its value stays in bounds.
  std::vector<std::size_t> singleton_for_row(m_, kNone);
  for (std::size_t j = 0; j < n_; ++j) {
    if (col_start_[j + 1] - col_start_[j] != 1) continue;
    const std::size_t r = row_index_[col_start_[j]];
    const double t = residual[r] / values_[col_start_[j]];
    if (t >= 0.0 && t <= hi_[j] - lo_[j] && singleton_for_row[r] == kNone) singleton_for_row[r] = j;
  }
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t art = n_ + r;
    const std::size_t j = singleton_for_row[r];
    if (j != kNone) {
      const double a = values_[col_start_[j]];
      header_[r] = j;
      state_[j] = VarState::basic;
      x_[j] = lo_[j] + residual[r] / a;
      binv_[r * m_ + r] = 1.0 / a;
      state_[art] = VarState::at_lower;
      hi_[art] = 0.0;
      x_[art] = 0.0;
    } else {
      const double sign = residual[r] >= 0.0 ? 1.0 : -1.0;
      values_[col_start_[art]] = sign;
      header_[r] = art;
      state_[art] = VarState::basic;
      hi_[art] = kInfinity;
      x_[art] = std::abs(residual[r]);
      binv_[r * m_ + r] = sign;
    }
  }
  pivots_since_refactor_ = 0;

  bool any_artificial = false;
  for (std::size_t r = 0; r < m_; ++r) any_artificial = any_artificial || header_[r] >= n_;
  if (any_artificial) {
    std::vector<double> phase1(total_, 0.0);
    for (std::size_t j = n_; j < total_; ++j) phase1[j] = 1.0;
    run_primal(phase1);
    double infeasibility = 0.0;
    double scale = 1.0;
    for (double v : b_) scale = std::max(scale, std::abs(v));
    for (std::size_t j = n_; j < total_; ++j) infeasibility += x_[j];
    if (infeasibility > kFeasTol * scale) return SolveStatus::infeasible;
    drive_out_artificials();
  }
  return run_primal(cost_);
}

void SimplexEngine::set_bounds(std::size_t var, double lo, double hi) {
  if (var >= n_) throw std::out_of_range("SimplexEngine::set_bounds: variable index");
  if (!(lo <= hi)) throw std::invalid_argument("SimplexEngine::set_bounds: lo > hi");
  lo_[var] = lo;
  hi_[var] = hi;
  if (state_[var] == VarState::basic) return;
  if (state_[var] == VarState::at_upper && !std::isfinite(hi)) state_[var] = VarState::at_lower;
  x_[var] = nonbasic_value(var);
}

void SimplexEngine::load_basis(const Basis& basis) {
  if (basis.header.size() != m_ || basis.state.size() != total_)
    throw std::invalid_argument("SimplexEngine::load_basis: shape mismatch");
  header_ = basis.header;
  state_ = basis.state;
  for (std::size_t j = 0; j < total_; ++j)
    if (state_[j] == VarState::at_upper && !std::isfinite(hi_[j])) state_[j] = VarState::at_lower;
  refactor();
  recompute_basic_values();
}

SolveStatus SimplexEngine::reoptimize_dual() {
  if (inconsistent_) return SolveStatus::infeasible;
  recompute_basic_values();
  std::vector<double> y;
  std::vector<double> alpha;
  for (;;) {
    if (iterations_ >= iteration_limit_) throw std::runtime_error("simplex: iteration limit reached");
    if (pivots_since_refactor_ >= kRefactorInterval) {
      refactor();
      recompute_basic_values();
    }
    std::size_t leave = kNone;
    double worst = 0.0;
    bool below = false;
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t bv = header_[r];
      const double under = lo_[bv] - x_[bv];
      const double over = x_[bv] - hi_[bv];
      if (under > kFeasTol * (1.0 + std::abs(lo_[bv])) && under > worst) {
        worst = under;
        leave = r;
        below = true;
      } else if (over > kFeasTol * (1.0 + std::abs(hi_[bv])) && over > worst) {
        worst = over;
        leave = r;
        below = false;
      }
    }
    if (leave == kNone) break;

    compute_duals(cost_, y);
    const double* rho = &binv_[leave * m_];
    std::size_t entering = kNone;
    double best_ratio = kInfinity;
    double best_pivot = 0.0;
    for (std::size_t j = 0; j < total_; ++j) {
      if (state_[j] == VarState::basic || is_fixed(j)) continue;
      double a = 0.0;
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) a += rho[row_index_[k]] * values_[k];
      const bool at_lower = state_[j] == VarState::at_lower;
      const bool eligible = below ? (at_lower ? a < -kPivotTol : a > kPivotTol)
                                  : (at_lower ? a > kPivotTol : a < -kPivotTol);
      if (!eligible) continue;
      const double d = reduced_cost(j, cost_, y);
      const double ratio = (at_lower ? std::max(d, 0.0) : std::max(-d, 0.0)) / std::abs(a);
      if (ratio < best_ratio - kTieTol || (ratio <= best_ratio + kTieTol && std::abs(a) > best_pivot)) {
        best_ratio = std::min(ratio, best_ratio);
        best_pivot = std::abs(a);
        entering = j;
      }
    }
    if (entering == kNone) return SolveStatus::infeasible;

    column(entering, alpha);
    const std::size_t bv = header_[leave];
    const double target = below ? lo_[bv] : hi_[bv];
    const double delta = (x_[bv] - target) / alpha[leave];
    x_[entering] += delta;
    for (std::size_t r = 0; r < m_; ++r) x_[header_[r]] -= delta * alpha[r];
    state_[bv] = below ? VarState::at_lower : VarState::at_upper;
    x_[bv] = target;
    pivot(leave, entering, alpha);
    ++iterations_;
  }
  return run_primal(cost_);
}

double SimplexEngine::objective() const {
  double v = 0.0;
  for (std::size_t j = 0; j < n_; ++j) v += cost_[j] * x_[j];
  return maximize_ ? -v : v;
}

std::vector<double> SimplexEngine::primal() const {
  std::vector<double> out(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
  for (std::size_t j = 0; j < n_; ++j) out[j] = std::clamp(out[j], lo_[j], hi_[j]);
  return out;
}

std::vector<double> SimplexEngine::duals() const {
  std::vector<double> y;
  compute_duals(cost_, y);
  std::vector<double> out(num_rows_original_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) out[kept_rows_[r]] = maximize_ ? -y[r] : y[r];
  return out;
}

}  // namespace detail

SolveReport solve_lp(const LinearProgram& lp, const LpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  detail::SimplexEngine engine(lp, options.iteration_limit);
  SolveReport report;
  report.status = engine.solve_primal();
  if (report.optimal()) {
    report.objective = engine.objective();
    report.solution = engine.primal();
    report.duals = engine.duals();
  }
  report.iterations = engine.iterations();
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wcert
