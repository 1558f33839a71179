#pragma once

// Dense two-phase tableau simplex with Bland's rule, in long double.
// Deliberately naive and unrelated to the library's bounded revised simplex:
// it only exists to cross-check it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "wcert/lp.hpp"

namespace oracle {

using Real = long double;

/// maximize c x  s.t.  A x = b,  x >= 0.
struct DenseLp {
  std::vector<Real> c;
  std::vector<std::vector<Real>> a;
  std::vector<Real> b;

  std::size_t add_var(Real cost) {
    c.push_back(cost);
    for (auto& row : a) row.push_back(0.0L);
    return c.size() - 1;
  }
  std::vector<Real>& add_row(Real rhs) {
    a.emplace_back(c.size(), 0.0L);
    b.push_back(rhs);
    return a.back();
  }
};

enum class Outcome { optimal, infeasible, unbounded };

struct Answer {
  Outcome outcome = Outcome::infeasible;
  Real value = 0.0L;
  std::vector<Real> x;
};

namespace detail {

constexpr Real kEps = 1e-12L;

struct Tableau {
  std::size_t m, cols;
  std::vector<std::vector<Real>> t;  // m rows of [coefficients | rhs]
  std::vector<Real> obj;             // reduced costs (minimization) | -objective
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t e) {
    const Real p = t[r][e];
    for (Real& v : t[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][e] == 0.0L) continue;
      const Real f = t[i][e];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    if (obj[e] != 0.0L) {
      const Real f = obj[e];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
    }
    basis[r] = e;
  }

  void price(const std::vector<Real>& cost) {
    obj.assign(cols + 1, 0.0L);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < m; ++i) {
      const Real cb = cost[basis[i]];
      if (cb == 0.0L) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * t[i][j];
    }
  }

  // Minimizes with Bland's rule over the allowed columns. False if unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t e = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j] && obj[j] < -kEps) {
          e = j;
          break;
        }
      if (e == cols) return true;
      std::size_t r = m;
      Real best = std::numeric_limits<Real>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][e] <= kEps) continue;
        const Real ratio = t[i][cols] / t[i][e];
        const bool tie = r < m && std::fabs(ratio - best) <= kEps;
        if (r == m || ratio < best - kEps || (tie && basis[i] < basis[r])) {
          if (!tie) best = ratio;
          r = i;
        }
      }
      if (r == m) return false;
      pivot(r, e);
    }
  }
};

}  // namespace detail

inline Answer solve_tableau(const DenseLp& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t n = lp.c.size();
  detail::Tableau tab{m, n + m, {}, {}, {}};
  tab.t.assign(m, std::vector<Real>(n + m + 1, 0.0L));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Real sign = lp.b[i] < 0.0L ? -1.0L : 1.0L;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * lp.a[i][j];
    tab.t[i][n + i] = 1.0L;
    tab.t[i][n + m] = sign * lp.b[i];
    tab.basis[i] = n + i;
  }

  std::vector<Real> cost(n + m, 0.0L);
  for (std::size_t i = 0; i < m; ++i) cost[n + i] = 1.0L;
  tab.price(cost);
  tab.run(std::vector<bool>(n + m, true));
  Answer ans;
  if (-tab.obj[n + m] > 1e-9L) return ans;

  // Drive zero-level artificials out where a structural column allows it.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (std::fabs(tab.t[i][j]) > 1e-9L) {
        tab.pivot(i, j);
        break;
      }
  }

  std::fill(cost.begin(), cost.end(), 0.0L);
  for (std::size_t j = 0; j < n; ++j) cost[j] = -lp.c[j];
  tab.price(cost);
  std::vector<bool> allowed(n + m, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(n), true);
  if (!tab.run(allowed)) {
    ans.outcome = Outcome::unbounded;
    return ans;
  }
  ans.outcome = Outcome::optimal;
  ans.x.assign(n, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) ans.x[tab.basis[i]] = tab.t[i][n + m];
  ans.value = 0.0L;
  for (std::size_t j = 0; j < n; ++j) ans.value += lp.c[j] * ans.x[j];
  return ans;
}

/// Rewrites a bounded-variable library LP as x' = x - lo >= 0 with explicit
/// upper-bound rows. `offset` receives the objective constant c . lo, and the
/// returned program is always a maximization.
inline DenseLp to_dense(const wcert::LinearProgram& lp, Real* offset) {
  const std::size_t n = lp.num_variables();
  const Real sign = lp.sense == wcert::Sense::maximize ? 1.0L : -1.0L;
  DenseLp out;
  Real constant = 0.0L;
  for (std::size_t j = 0; j < n; ++j) {
    out.add_var(sign * lp.objective[j]);
    constant += sign * lp.objective[j] * lp.lower[j];
  }
  for (const auto& row : lp.rows) {
    Real rhs = row.rhs;
    for (const auto& term : row.terms) rhs -= term.value * lp.lower[term.index];
    auto& dense = out.add_row(rhs);
    for (const auto& term : row.terms) dense[term.index] += term.value;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isinf(lp.upper[j])) continue;
    const std::size_t s = out.add_var(0.0L);
    auto& dense = out.add_row(static_cast<Real>(lp.upper[j]) - lp.lower[j]);
    dense[j] = 1.0L;
    dense[s] = 1.0L;
  }
  if (offset) *offset = constant;
  return out;
}

/// Solves a library LP with the tableau; value is in the LP's own sense.
inline Answer solve_library_lp(const wcert::LinearProgram& lp) {
  Real offset = 0.0L;
  Answer ans = solve_tableau(to_dense(lp, &offset));
  if (ans.outcome != Outcome::optimal) return ans;
  ans.value += offset;
  if (lp.sense == wcert::Sense::minimize) ans.value = -ans.value;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) ans.x[j] += lp.lower[j];
  ans.x.resize(lp.num_variables());
  return ans;
}

/// Max over all 2^B fixings of the binaries, each solved by the tableau.
inline Answer enumerate_milp(const wcert::MilpModel& model) {
  const std::size_t B = model.binary_indices.size();
  Answer best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << B); ++mask) {
    wcert::LinearProgram lp = model.base;
    bool possible = true;
    for (std::size_t b = 0; b < B; ++b) {
      const std::size_t idx = model.binary_indices[b];
      const double value = (mask >> b) & 1U ? 1.0 : 0.0;
      if (value < lp.lower[idx] || value > lp.upper[idx]) possible = false;
      lp.lower[idx] = lp.upper[idx] = value;
    }
    if (!possible) continue;
    const Answer ans = solve_library_lp(lp);
    if (ans.outcome == Outcome::unbounded) return ans;
    if (ans.outcome == Outcome::optimal && (best.outcome != Outcome::optimal || ans.value > best.value)) best = ans;
  }
  return best;
}

}  // namespace oracle
