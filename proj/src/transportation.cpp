// Transportation simplex (MODI / u-v method) on the k x l bipartite tree basis.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wcert/lp.hpp"

namespace wcert {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr int kDegenerateLimit = 50;
constexpr std::uint64_t kIterationLimit = 10'000'000;

struct Cell {
  std::size_t row;
  std::size_t col;
  double amount;
};

void check_marginal(std::span<const double> mass, const char* name) {
  if (mass.empty()) throw std::invalid_argument(std::string("solve_transportation: empty ") + name);
  for (double v : mass)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument(std::string("solve_transportation: ") + name + " entries must be finite and >= 0");
}

// Least-cost greedy start. Each allocation crosses out exactly one row or
// column (the last one both), which yields k + l - 1 tree cells.
std::vector<Cell> initial_basis(std::vector<double> supply, std::vector<double> demand, const Matrix& cost) {
  const std::size_t k = supply.size();
  const std::size_t l = demand.size();
  std::vector<std::size_t> order(k * l);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost.data()[a] < cost.data()[b]; });
  std::vector<bool> row_done(k, false);
  std::vector<bool> col_done(l, false);
  std::size_t rows_left = k;
  std::size_t cols_left = l;
  std::vector<Cell> basis;
  basis.reserve(k + l - 1);
  for (std::size_t idx : order) {
    if (rows_left == 0 || cols_left == 0) break;
    const std::size_t i = idx / l;
    const std::size_t j = idx % l;
    if (row_done[i] || col_done[j]) continue;
    const double amount = std::min(supply[i], demand[j]);
    supply[i] -= amount;
    demand[j] -= amount;
    basis.push_back({i, j, amount});
    if (rows_left == 1 && cols_left == 1) {
      row_done[i] = col_done[j] = true;
      rows_left = cols_left = 0;
    } else if (rows_left > 1 && (supply[i] <= demand[j] || cols_left == 1)) {
      row_done[i] = true;
      --rows_left;
    } else {
      col_done[j] = true;
      --cols_left;
    }
  }
  return basis;
}

}  // namespace

SolveReport solve_transportation(std::span<const double> supply, std::span<const double> demand, const Matrix& cost) {
  const auto start = std::chrono::steady_clock::now();
  check_marginal(supply, "supply");
  check_marginal(demand, "demand");
  const std::size_t k = supply.size();
  const std::size_t l = demand.size();
  if (cost.rows() != k || cost.cols() != l)
    throw std::invalid_argument("solve_transportation: cost matrix shape does not match the marginals");
  for (double c : cost.data())
    if (!std::isfinite(c)) throw std::invalid_argument("solve_transportation: non-finite cost");
  const double total_supply = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double total_demand = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(total_supply - total_demand) > 1e-9)
    throw std::invalid_argument("solve_transportation: supply and demand do not balance");

  std::vector<double> sup(supply.begin(), supply.end());
  std::vector<double> dem(demand.begin(), demand.end());
  if (total_demand > 0.0)
    for (double& v : dem) v *= total_supply / total_demand;

  std::vector<Cell> basis = initial_basis(sup, dem, cost);
  double cost_scale = 1.0;
  for (double c : cost.data()) cost_scale = std::max(cost_scale, std::abs(c));
  const double opt_tol = 1e-12 * cost_scale;

  // Nodes 0..k-1 are rows, k..k+l-1 are columns.
  const std::size_t nodes = k + l;
  std::vector<std::vector<std::size_t>> adjacency(nodes);
  std::vector<double> potential(nodes);
  std::vector<std::size_t> parent_cell(nodes);
  std::vector<std::size_t> parent_node(nodes);
  std::vector<std::size_t> depth(nodes);
  std::vector<std::size_t> queue;
  queue.reserve(nodes);

  std::uint64_t iterations = 0;
  int degenerate_run = 0;
  bool bland = false;
  for (;;) {
    if (iterations >= kIterationLimit) throw std::runtime_error("solve_transportation: iteration limit reached");
    for (auto& adj : adjacency) adj.clear();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      adjacency[basis[b].row].push_back(b);
      adjacency[k + basis[b].col].push_back(b);
    }
    // Potentials u_i + v_j = c_ij over the spanning tree rooted at row 0.
    std::fill(parent_node.begin(), parent_node.end(), kNone);
    queue.clear();
    queue.push_back(0);
    potential[0] = 0.0;
    depth[0] = 0;
    parent_node[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t b : adjacency[u]) {
        const Cell& cell = basis[b];
        const std::size_t v = u < k ? k + cell.col : cell.row;
        if (parent_node[v] != kNone) continue;
        parent_node[v] = u;
        parent_cell[v] = b;
        depth[v] = depth[u] + 1;
        potential[v] = cost(cell.row, cell.col) - potential[u];
        queue.push_back(v);
      }
    }
    if (queue.size() != nodes) throw std::logic_error("solve_transportation: basis is not a spanning tree");

    std::size_t enter_row = kNone;
    std::size_t enter_col = kNone;
    double best = -opt_tol;
    for (std::size_t i = 0; i < k && !(bland && enter_row != kNone); ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        const double reduced = cost(i, j) - potential[i] - potential[k + j];
        if (reduced < best) {
          enter_row = i;
          enter_col = j;
          if (bland) break;
          best = reduced;
        }
      }
    }
    if (enter_row == kNone) break;

    // Tree path from column node back to row node; edges alternate -, +, ...
    std::vector<std::size_t> from_col;
    std::vector<std::size_t> from_row;
    std::size_t a = k + enter_col;
    std::size_t b = enter_row;
    while (depth[a] > depth[b]) {
      from_col.push_back(parent_cell[a]);
      a = parent_node[a];
    }
    while (depth[b] > depth[a]) {
      from_row.push_back(parent_cell[b]);
      b = parent_node[b];
    }
    while (a != b) {
      from_col.push_back(parent_cell[a]);
      a = parent_node[a];
      from_row.push_back(parent_cell[b]);
      b = parent_node[b];
    }
    std::vector<std::size_t> cycle = from_col;
    cycle.insert(cycle.end(), from_row.rbegin(), from_row.rend());

    std::size_t leave = kNone;
    double theta = kInfinity;
    for (std::size_t pos = 0; pos < cycle.size(); pos += 2) {
      const Cell& cell = basis[cycle[pos]];
      const bool better = cell.amount < theta ||
                          (bland && cell.amount == theta &&
                           cell.row * l + cell.col < basis[leave].row * l + basis[leave].col);
      if (better) {
        theta = cell.amount;
        leave = cycle[pos];
      }
    }
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      Cell& cell = basis[cycle[pos]];
      cell.amount += pos % 2 == 0 ? -theta : theta;
    }
    basis[leave] = {enter_row, enter_col, theta};
    ++iterations;

    if (theta <= 0.0) {
      if (++degenerate_run > kDegenerateLimit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }

  SolveReport report;
  report.status = SolveStatus::optimal;
  report.solution.assign(k * l, 0.0);
  for (const Cell& cell : basis) report.solution[cell.row * l + cell.col] = std::max(cell.amount, 0.0);
  double objective = 0.0;
  for (std::size_t idx = 0; idx < k * l; ++idx) objective += cost.data()[idx] * report.solution[idx];
  report.objective = objective;
  report.iterations = iterations;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wcert
