#pragma once

// Exact optimum of a small bounded LP with integer data by enumerating every
// basic solution. Bases are solved with integer adjugates (Cramer), so each
// candidate vertex is an exact fraction; redundant rows are detected with
// rational elimination first.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wcert/lp.hpp"

namespace oracle {

struct Fraction {
  __int128 num = 0;
  __int128 den = 1;  // > 0

  bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct VertexOptimum {
  bool feasible = false;
  Fraction value;
};

namespace detail {

using Rational = boost::multiprecision::cpp_rational;

inline std::int64_t as_integer(double v) {
  if (v != std::round(v) || std::abs(v) > 1e6) throw std::invalid_argument("vertex oracle needs integer data");
  return static_cast<std::int64_t>(v);
}

// Fraction-free (Bareiss) determinant of a small integer matrix.
inline __int128 determinant(std::vector<std::vector<__int128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Indices of a maximal independent row subset of [A | b]; nullopt if the
// system is inconsistent.
inline std::optional<std::vector<std::size_t>> independent_rows(const std::vector<std::vector<std::int64_t>>& a,
                                                                const std::vector<std::int64_t>& b) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  std::vector<std::vector<Rational>> basis;  // reduced rows, pivot columns below
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<Rational> row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = a[r][j];
    row[n] = b[r];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational f = row[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) row[j] -= f * basis[k][j];
    }
    std::size_t p = n;
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] != 0) {
        p = j;
        break;
      }
    if (p == n) {
      if (row[n] != 0) return std::nullopt;
      continue;
    }
    const Rational piv = row[p];
    for (auto& v : row) v /= piv;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational f = basis[k][p];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) basis[k][j] -= f * row[j];
    }
    basis.push_back(std::move(row));
    pivots.push_back(p);
    keep.push_back(r);
  }
  return keep;
}

}  // namespace detail

/// Exact maximum (in the LP's own sense) of a bounded LP with integer
/// coefficients, right-hand sides, bounds and costs.
inline VertexOptimum enumerate_vertices(const wcert::LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  std::vector<std::vector<std::int64_t>> dense(lp.rows.size(), std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> rhs(lp.rows.size());
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    for (const auto& t : lp.rows[r].terms) dense[r][t.index] += detail::as_integer(t.value);
    rhs[r] = detail::as_integer(lp.rows[r].rhs);
  }
  std::vector<std::int64_t> c(n), lo(n), hi(n);
  const std::int64_t sense = lp.sense == wcert::Sense::maximize ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = sense * detail::as_integer(lp.objective[j]);
    lo[j] = detail::as_integer(lp.lower[j]);
    if (std::isinf(lp.upper[j])) throw std::invalid_argument("vertex oracle needs finite bounds");
    hi[j] = detail::as_integer(lp.upper[j]);
  }

  VertexOptimum best;
  const auto rows = detail::independent_rows(dense, rhs);
  if (!rows) return best;
  const std::size_t m = rows->size();

  std::vector<std::size_t> basic(m);
  std::vector<bool> in_basis(n);
  auto visit_basis = [&]() {
    std::vector<std::vector<__int128>> B(m, std::vector<__int128>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) B[i][k] = dense[(*rows)[i]][basic[k]];
    const __int128 det = detail::determinant(B);
    if (det == 0) return;
    // adj(B) column j = det * B^{-1} e_j, via Cramer's rule.
    std::vector<std::vector<__int128>> adj(m, std::vector<__int128>(m));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        auto Bk = B;
        for (std::size_t i = 0; i < m; ++i) Bk[i][k] = i == j ? 1 : 0;
        adj[k][j] = detail::determinant(Bk);
      }
    std::vector<std::size_t> nonbasic;
    for (std::size_t j = 0; j < n; ++j)
      if (!in_basis[j]) nonbasic.push_back(j);
    const std::size_t q = nonbasic.size();
    std::vector<__int128> residual(m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
      __int128 obj_nonbasic = 0;
      for (std::size_t i = 0; i < m; ++i) residual[i] = rhs[(*rows)[i]];
      for (std::size_t t = 0; t < q; ++t) {
        const std::size_t j = nonbasic[t];
        const std::int64_t x = (mask >> t) & 1U ? hi[j] : lo[j];
        obj_nonbasic += static_cast<__int128>(c[j]) * x;
        for (std::size_t i = 0; i < m; ++i) residual[i] -= static_cast<__int128>(dense[(*rows)[i]][j]) * x;
      }
      // det * x_B = adj * residual; check lo <= x_B <= hi exactly.
      bool ok = true;
      __int128 obj_basic = 0;
      for (std::size_t k = 0; k < m && ok; ++k) {
        __int128 v = 0;
        for (std::size_t i = 0; i < m; ++i) v += adj[k][i] * residual[i];
        const __int128 d = det > 0 ? det : -det;
        if (det < 0) v = -v;
        ok = v >= static_cast<__int128>(lo[basic[k]]) * d && v <= static_cast<__int128>(hi[basic[k]]) * d;
        obj_basic += static_cast<__int128>(c[basic[k]]) * v;
      }
      if (!ok) continue;
      const __int128 d = det > 0 ? det : -det;
      Fraction value{obj_basic + obj_nonbasic * d, d};
      if (!best.feasible || best.value < value) {
        best.feasible = true;
        best.value = value;
      }
    }
  };

  // All m-subsets of columns, lexicographic.
  if (m > n) return best;
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  for (;;) {
    std::fill(in_basis.begin(), in_basis.end(), false);
    for (std::size_t i = 0; i < m; ++i) {
      basic[i] = pick[i];
      in_basis[pick[i]] = true;
    }
    visit_basis();
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
  }
  if (best.feasible && sense < 0) best.value.num = -best.value.num;
  return best;
}

}  // namespace oracle
