#include "wcert/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "wcert/lp.hpp"

namespace wcert {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double power(double base, double rho) { return rho == 1.0 ? base : std::pow(base, rho); }

struct HeapEntry {
  double key;
  std::size_t sample;
  std::uint32_t version;
  bool operator>(const HeapEntry& other) const {
    if (key != other.key) return key > other.key;
    return sample > other.sample;
  }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

}  // namespace

Matrix cost_matrix(const Matrix& a, const Matrix& b, NormOrder order, double rho) {
  if (a.cols() != b.cols()) throw std::invalid_argument("cost_matrix: dimension mismatch");
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = power(norm(a.row(i), b.row(j), order), rho);
  return c;
}

double wasserstein(const DiscreteDistribution& p, const DiscreteDistribution& q, const Config& cfg) {
  if (p.dimension() != q.dimension()) throw std::invalid_argument("wasserstein: dimension mismatch");
  const DiscreteDistribution a = p.without_empty_atoms();
  const DiscreteDistribution b = q.without_empty_atoms();
  const Matrix cost = cost_matrix(a.support(), b.support(), cfg.norm_order, cfg.rho);
  const SolveReport report = solve_transportation(a.weights(), b.weights(), cost);
  if (!report.optimal()) throw std::runtime_error("wasserstein: transportation solve failed");
  return std::pow(std::max(report.objective, 0.0), 1.0 / cfg.rho);
}

// Samples are inserted one at a time. After each insertion the assignment is
// optimal for the samples seen so far; atom potentials phi keep every sample
// at an atom minimizing c(k, t) - phi_t, which makes the reduced weights of
// the compressed atom graph nonnegative and lets Dijkstra find the cheapest
// chain of reassignments to an atom with spare capacity.
double wasserstein_empirical(const Matrix& samples, const DiscreteDistribution& q, const Config& cfg) {
  if (samples.rows() == 0) throw std::invalid_argument("wasserstein_empirical: no samples");
  if (samples.cols() != q.dimension()) throw std::invalid_argument("wasserstein_empirical: dimension mismatch");
  const std::size_t K = samples.rows();
  const std::size_t l = q.size();

  std::vector<std::size_t> capacity(l);
  std::size_t total = 0;
  for (std::size_t t = 0; t < l; ++t) {
    const double scaled = q.weights()[t] * static_cast<double>(K);
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-6)
      throw std::invalid_argument("wasserstein_empirical: atom weights times sample count must be integers");
    capacity[t] = static_cast<std::size_t>(rounded);
    total += capacity[t];
  }
  if (total != K) throw std::invalid_argument("wasserstein_empirical: capacities do not sum to the sample count");

  const Matrix cost = cost_matrix(samples, q.support(), cfg.norm_order, cfg.rho);
  std::vector<double> phi(l, 0.0);
  std::vector<std::size_t> load(l, 0);
  std::vector<std::size_t> assigned(K, kNone);
  std::vector<std::uint32_t> version(K, 0);
  std::vector<MinHeap> heaps(l * l);

  auto place = [&](std::size_t k, std::size_t t) {
    assigned[k] = t;
    ++version[k];
    for (std::size_t u = 0; u < l; ++u)
      if (u != t) heaps[t * l + u].push({cost(k, u) - cost(k, t), k, version[k]});
  };
  // Cheapest single reassignment from atom `from` to atom `to`.
  auto edge = [&](std::size_t from, std::size_t to) -> const HeapEntry* {
    MinHeap& heap = heaps[from * l + to];
    while (!heap.empty()) {
      const HeapEntry& top = heap.top();
      if (assigned[top.sample] == from && version[top.sample] == top.version) return &top;
      heap.pop();
    }
    return nullptr;
  };

  std::vector<double> dist(l);
  std::vector<bool> done(l);
  std::vector<std::size_t> pred_atom(l);
  std::vector<std::size_t> pred_sample(l);
  for (std::size_t k = 0; k < K; ++k) {
    double shift = kInfinity;
    for (std::size_t t = 0; t < l; ++t) shift = std::min(shift, cost(k, t) - phi[t]);
    for (std::size_t t = 0; t < l; ++t) {
      dist[t] = cost(k, t) - phi[t] - shift;
      done[t] = false;
      pred_atom[t] = kNone;
    }
    for (std::size_t step = 0; step < l; ++step) {
      std::size_t u = kNone;
      for (std::size_t t = 0; t < l; ++t)
        if (!done[t] && (u == kNone || dist[t] < dist[u])) u = t;
      done[u] = true;
      for (std::size_t t = 0; t < l; ++t) {
        if (done[t]) continue;
        const HeapEntry* e = edge(u, t);
        if (e == nullptr) continue;
        const double reduced = std::max(e->key + phi[u] - phi[t], 0.0);
        if (dist[u] + reduced < dist[t]) {
          dist[t] = dist[u] + reduced;
          pred_atom[t] = u;
          pred_sample[t] = e->sample;
        }
      }
    }
    std::size_t target = kNone;
    for (std::size_t t = 0; t < l; ++t)
      if (load[t] < capacity[t] && (target == kNone || dist[t] + phi[t] < dist[target] + phi[target])) target = t;

    std::size_t t = target;
    while (pred_atom[t] != kNone) {
      const std::size_t from = pred_atom[t];
      place(pred_sample[t], t);
      t = from;
    }
    place(k, t);
    ++load[target];
    for (std::size_t u = 0; u < l; ++u) phi[u] += dist[u];
  }

  double objective = 0.0;
  for (std::size_t k = 0; k < K; ++k) objective += cost(k, assigned[k]);
  objective /= static_cast<double>(K);
  return std::pow(std::max(objective, 0.0), 1.0 / cfg.rho);
}

}  // namespace wcert
