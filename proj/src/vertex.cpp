#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wcert/bounds.hpp"

namespace wcert {
namespace {

constexpr double kTol = 1e-12;

double term(double diff, NormOrder order) {
  return order == NormOrder::l2 ? diff * diff : std::abs(diff);
}

double combine(double acc, double t, NormOrder order) { return order == NormOrder::linf ? std::max(acc, t) : acc + t; }

double finish_distance(double acc, NormOrder order) { return order == NormOrder::l2 ? std::sqrt(acc) : acc; }

void check_box(std::span<const double> pi, const ProbabilityBox& box) {
  if (pi.size() != box.size() || box.upper.size() != box.lower.size())
    throw std::invalid_argument("closest_vertex: pi and box sizes differ");
  if (pi.empty()) throw std::invalid_argument("closest_vertex: empty box");
  if (!box.feasible(kTol)) throw std::invalid_argument("closest_vertex: box admits no probability vector");
}

// Classifies coordinates once the values are known. A "free" coordinate that
// landed on one of its bounds is reported with that bound's set.
VertexDecomposition decompose(std::vector<double> v, std::span<const double> pi, const ProbabilityBox& box,
                              std::optional<std::size_t> free, NormOrder order) {
  VertexDecomposition out;
  out.v = std::move(v);
  double acc = 0.0;
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    acc = combine(acc, term(out.v[i] - pi[i], order), order);
    if (free && *free == i) {
      if (out.v[i] == box.lower[i]) out.lower_set.push_back(i);
      else if (out.v[i] == box.upper[i]) out.upper_set.push_back(i);
      else out.free_index = i;
    } else if (out.v[i] == box.lower[i]) {
      out.lower_set.push_back(i);
    } else {
      out.upper_set.push_back(i);
    }
  }
  out.distance = finish_distance(acc, order);
  return out;
}

}  // namespace

VertexDecomposition sorted_gap_vertex(std::span<const double> pi, const ProbabilityBox& box, NormOrder order) {
  check_box(pi, box);
  const std::size_t M = pi.size();
  std::vector<double> v(box.lower.begin(), box.lower.end());
  double remaining = 1.0 - std::accumulate(v.begin(), v.end(), 0.0);
  std::vector<double> gap(M);
  for (std::size_t i = 0; i < M; ++i) gap[i] = term(pi[i] - box.upper[i], order) - term(pi[i] - box.lower[i], order);
  std::vector<std::size_t> idx(M);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });

  std::optional<std::size_t> free;
  for (std::size_t i : idx) {
    if (remaining <= 0.0) break;
    const double width = box.upper[i] - box.lower[i];
    if (width <= remaining) {
      v[i] = box.upper[i];
      remaining -= width;
    } else {
      v[i] = box.lower[i] + remaining;
      remaining = 0.0;
      free = i;
    }
  }
  return decompose(std::move(v), pi, box, free, order);
}

VertexDecomposition closest_vertex(std::span<const double> pi, const ProbabilityBox& box, NormOrder order,
                                   std::uint64_t node_budget) {
  const VertexDecomposition seed = sorted_gap_vertex(pi, box, order);
  const std::size_t M = pi.size();
  const double slack = 1.0 - std::accumulate(box.lower.begin(), box.lower.end(), 0.0);

  std::vector<double> cost_low(M);
  std::vector<double> cost_high(M);
  std::vector<double> width(M);
  for (std::size_t i = 0; i < M; ++i) {
    cost_low[i] = term(box.lower[i] - pi[i], order);
    cost_high[i] = term(box.upper[i] - pi[i], order);
    width[i] = box.upper[i] - box.lower[i];
  }

  double best = 0.0;
  for (std::size_t i = 0; i < M; ++i) best = combine(best, term(seed.v[i] - pi[i], order), order);
  std::vector<double> best_v = seed.v;
  std::optional<std::size_t> best_free = seed.free_index;

  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::vector<std::size_t> order_idx;
  std::vector<double> suffix_width;
  std::vector<double> suffix_bound;
  std::vector<bool> at_upper(M);

  // For each choice of free coordinate f, decide every other coordinate's
  // bound depth-first; f absorbs whatever mass is left.
  for (std::size_t f = 0; f < M && !exhausted; ++f) {
    order_idx.clear();
    for (std::size_t i = 0; i < M; ++i)
      if (i != f) order_idx.push_back(i);
    std::stable_sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(cost_low[a] - cost_high[a]) > std::abs(cost_low[b] - cost_high[b]);
    });
    const std::size_t K = order_idx.size();
    suffix_width.assign(K + 1, 0.0);
    suffix_bound.assign(K + 1, 0.0);
    for (std::size_t k = K; k-- > 0;) {
      const std::size_t i = order_idx[k];
      suffix_width[k] = suffix_width[k + 1] + width[i];
      suffix_bound[k] = combine(suffix_bound[k + 1], std::min(cost_low[i], cost_high[i]), order);
    }

    // Closest value to pi_f that z_f can still take given the raised mass so far.
    auto free_term_bound = [&](double raised, std::size_t k) {
      const double hi = std::min(box.upper[f], box.lower[f] + slack - raised);
      const double lo = std::max(box.lower[f], box.lower[f] + slack - raised - suffix_width[k]);
      if (lo > hi + kTol) return kInfinity;
      return term(std::clamp(pi[f], std::min(lo, hi), hi) - pi[f], order);
    };

    auto search = [&](auto&& self, std::size_t k, double partial, double raised) -> void {
      if (exhausted) return;
      if (++nodes > node_budget) {
        exhausted = true;
        return;
      }
      if (raised > slack + kTol) return;
      const double f_bound = free_term_bound(raised, k);
      if (!std::isfinite(f_bound)) return;
      const double lower_bound = combine(combine(partial, suffix_bound[k], order), f_bound, order);
      if (lower_bound >= best) return;
      if (k == K) {
        const double z = std::clamp(box.lower[f] + slack - raised, box.lower[f], box.upper[f]);
        const double total = combine(partial, term(z - pi[f], order), order);
        if (total < best) {
          best = total;
          for (std::size_t i = 0; i < M; ++i) best_v[i] = at_upper[i] ? box.upper[i] : box.lower[i];
          best_v[f] = z;
          best_free = f;
        }
        return;
      }
      const std::size_t i = order_idx[k];
      const bool high_first = cost_high[i] < cost_low[i];
      for (int side = 0; side < 2; ++side) {
        const bool up = (side == 0) == high_first;
        at_upper[i] = up;
        self(self, k + 1, combine(partial, up ? cost_high[i] : cost_low[i], order), raised + (up ? width[i] : 0.0));
      }
      at_upper[i] = false;
    };
    std::fill(at_upper.begin(), at_upper.end(), false);
    search(search, 0, 0.0, 0.0);
  }

  VertexDecomposition out = decompose(best_v, pi, box, best_free, order);
  out.exact = !exhausted;
  return out;
}

}  // namespace wcert
