#include "wcert/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wcert {
namespace {

// Above this many trials the tail is evaluated with the incomplete-beta
// continued fraction instead of the direct sum.
constexpr std::int64_t kDirectSumLimit = 100000;
constexpr int kMaxBisection = 200;

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// log of sum_{j=k}^{n} C(n,j) p^j q^{n-j}, given log p and log q (q = 1 - p).
// Terms are unimodal in j, so the sum starts at the largest term inside the
// range and walks outward until terms drop 50 nats below the maximum.
double log_upper_tail_sum(std::int64_t k, std::int64_t n, double log_p, double log_q) {
  const double p = std::exp(log_p);
  auto log_term = [&](std::int64_t j) {
    return log_choose(n, j) + static_cast<double>(j) * log_p + static_cast<double>(n - j) * log_q;
  };
  auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(n + 1) * p));
  mode = std::clamp<std::int64_t>(mode, 0, n);
  const std::int64_t start = std::max(k, mode);
  const double peak = log_term(start);
  constexpr double kCutoff = 50.0;

  double acc = 1.0;
  for (std::int64_t j = start + 1; j <= n; ++j) {
    const double t = log_term(j) - peak;
    if (t < -kCutoff) break;
    acc += std::exp(t);
  }
  for (std::int64_t j = start - 1; j >= k; --j) {
    const double t = log_term(j) - peak;
    if (t < -kCutoff) break;
    acc += std::exp(t);
  }
  return peak + std::log(acc);
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b) with x = exp(log_x), 1 - x = exp(log_1mx).
double regularized_beta(double a, double b, double log_x, double log_1mx) {
  const double x = std::exp(log_x);
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double log_front = a * log_x + b * log_1mx - log_beta;
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, std::exp(log_1mx)) / b;
}

// P(X >= k) for X ~ Bin(n, p) from log p and log(1 - p).
double upper_tail(std::int64_t k, std::int64_t n, double log_p, double log_q) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (n > kDirectSumLimit)
    return regularized_beta(static_cast<double>(k), static_cast<double>(n - k + 1), log_p, log_q);
  return std::exp(log_upper_tail_sum(k, n, log_p, log_q));
}

void check_arguments(std::int64_t count, std::int64_t trials, double alpha) {
  if (trials < 1) throw std::invalid_argument("Clopper-Pearson: trials must be >= 1");
  if (count < 0 || count > trials) throw std::invalid_argument("Clopper-Pearson: count outside [0, trials]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("Clopper-Pearson: alpha must lie in (0, 1)");
}

// Bisection on [0, 1] for the root of an increasing function g(p) - alpha,
// run until the bracket stops shrinking.
template <typename F>
double bisect_increasing(F&& g, double alpha) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < alpha) lo = mid;
    else hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace

double binomial_upper_tail(std::int64_t count, std::int64_t trials, double p) {
  if (p <= 0.0) return count <= 0 ? 1.0 : 0.0;
  if (p >= 1.0) return count <= trials ? 1.0 : 0.0;
  return upper_tail(count, trials, std::log(p), std::log1p(-p));
}

double binomial_lower_tail(std::int64_t count, std::int64_t trials, double p) {
  if (count >= trials) return 1.0;
  if (count < 0) return 0.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  // P(X <= k) = P(N - X >= N - k), N - X ~ Bin(N, 1 - p).
  return upper_tail(trials - count, trials, std::log1p(-p), std::log(p));
}

double cp_lower(std::int64_t count, std::int64_t trials, double alpha) {
  check_arguments(count, trials, alpha);
  if (count == 0) return 0.0;
  return bisect_increasing([&](double p) { return binomial_upper_tail(count, trials, p); }, alpha);
}

double cp_upper(std::int64_t count, std::int64_t trials, double alpha) {
  check_arguments(count, trials, alpha);
  if (count == trials) return 1.0;
  // P(X <= count; p) decreases in p; bisect on its complement-free mirror.
  return bisect_increasing([&](double p) { return -binomial_lower_tail(count, trials, p); }, -alpha);
}

bool ProbabilityBox::contains(std::span<const double> pi, double tolerance) const {
  if (pi.size() != size()) return false;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] < lower[i] - tolerance || pi[i] > upper[i] + tolerance) return false;
  return true;
}

bool ProbabilityBox::feasible(double tolerance) const {
  const double lo = std::accumulate(lower.begin(), lower.end(), 0.0);
  const double hi = std::accumulate(upper.begin(), upper.end(), 0.0);
  return lo <= 1.0 + tolerance && hi >= 1.0 - tolerance;
}

ProbabilityBox build_probability_box(std::span<const std::int64_t> counts, std::int64_t trials, double beta) {
  if (counts.empty()) throw std::invalid_argument("build_probability_box: no regions");
  const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (total != trials) throw std::invalid_argument("build_probability_box: counts do not sum to N");
  ProbabilityBox box;
  box.per_region_alpha = beta / (2.0 * static_cast<double>(counts.size()));
  box.lower.reserve(counts.size());
  box.upper.reserve(counts.size());
  for (std::int64_t c : counts) {
    box.lower.push_back(cp_lower(c, trials, box.per_region_alpha));
    box.upper.push_back(cp_upper(c, trials, box.per_region_alpha));
  }
  return box;
}

}  // namespace wcert
