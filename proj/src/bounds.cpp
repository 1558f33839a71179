#include "wcert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wcert/transport.hpp"

namespace wcert {
namespace {

constexpr double kZeroCapacity = 1e-15;

double root(double value, double rho) { return std::pow(std::max(value, 0.0), 1.0 / rho); }

// Mass-shifting model around marginal `marg`. The diagonal of the plan is
// forced to min(omega_i, marg_i), so only off-diagonal flows remain: f_ij
// moves mass that region i gains (omega_i > marg_i) onto representative j,
// which in turn loses it. z_i = 0 lets region i gain (up to p_u - marg_i),
// z_i = 1 lets it lose (up to marg_i - p_l), never both. The objective is
// sum_ij (cost_ij - cost_jj) f_ij; the constant sum_i cost_ii marg_i is
// returned separately.
MilpModel mass_shift_model(const Matrix& cost, std::span<const double> marg, const ProbabilityBox& box,
                           double* constant_term) {
  const std::size_t M = marg.size();
  std::vector<double> gain_cap(M);
  std::vector<double> loss_cap(M);
  double constant = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    gain_cap[i] = std::max(box.upper[i] - marg[i], 0.0);
    loss_cap[i] = std::max(marg[i] - box.lower[i], 0.0);
    constant += cost(i, i) * marg[i];
  }
  if (constant_term) *constant_term = constant;

  MilpModel model;
  LinearProgram& lp = model.base;
  lp.sense = Sense::maximize;
  std::vector<std::vector<LinearProgram::Term>> out_terms(M);
  std::vector<std::vector<LinearProgram::Term>> in_terms(M);
  for (std::size_t i = 0; i < M; ++i) {
    if (gain_cap[i] <= kZeroCapacity) continue;
    for (std::size_t j = 0; j < M; ++j) {
      if (j == i || loss_cap[j] <= kZeroCapacity) continue;
      const double gain = cost(i, j) - cost(j, j);
      if (gain <= 0.0) continue;
      const std::size_t var = lp.add_variable(gain);
      out_terms[i].push_back({var, 1.0});
      in_terms[j].push_back({var, 1.0});
    }
  }
  for (std::size_t i = 0; i < M; ++i) {
    const bool gains = !out_terms[i].empty();
    const bool loses = !in_terms[i].empty();
    // A region that can only gain (or only lose) needs no binary choice.
    const double lo = gains ? 0.0 : 1.0;
    const double hi = loses ? 1.0 : 0.0;
    const std::size_t z = lp.add_variable(0.0, std::min(lo, hi), hi);
    model.binary_indices.push_back(z);
    if (gains) {
      LinearProgram::Row row;
      row.terms = out_terms[i];
      row.terms.push_back({z, gain_cap[i]});
      row.terms.push_back({lp.add_variable(0.0), 1.0});
      row.rhs = gain_cap[i];
      lp.rows.push_back(std::move(row));
    }
    if (loses) {
      LinearProgram::Row row;
      row.terms = in_terms[i];
      row.terms.push_back({z, -loss_cap[i]});
      row.terms.push_back({lp.add_variable(0.0), 1.0});
      row.rhs = 0.0;
      lp.rows.push_back(std::move(row));
    }
  }
  return model;
}

std::size_t free_binaries(const MilpModel& model) {
  std::size_t count = 0;
  for (std::size_t idx : model.binary_indices) count += model.base.lower[idx] < model.base.upper[idx];
  return count;
}

void accumulate(SolveReport& total, const SolveReport& part) {
  total.nodes += part.nodes == 0 ? 1 : part.nodes;
  total.iterations += part.iterations;
  total.wall_ms += part.wall_ms;
}

}  // namespace

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::theorem1: return "theorem1";
    case BoundMethod::prop2: return "prop2";
    case BoundMethod::analytic: return "analytic";
    case BoundMethod::fournier: return "fournier";
  }
  return "unknown";
}

BoundMethod parse_bound_method(std::string_view text) {
  if (text == "theorem1") return BoundMethod::theorem1;
  if (text == "prop2") return BoundMethod::prop2;
  if (text == "analytic") return BoundMethod::analytic;
  if (text == "fournier") return BoundMethod::fournier;
  throw std::invalid_argument("unknown bound method '" + std::string(text) + "'");
}

void BoundProblem::validate() const {
  const std::size_t M = pi.size();
  if (M == 0) throw std::invalid_argument("BoundProblem: no regions");
  if (cost.rows() != M || cost.cols() != M) throw std::invalid_argument("BoundProblem: cost must be M x M");
  if (box.size() != M || box.upper.size() != M) throw std::invalid_argument("BoundProblem: box size differs from M");
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("BoundProblem: rho must be >= 1");
  for (double c : cost.data())
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("BoundProblem: costs must be finite and >= 0");
  for (std::size_t i = 0; i < M; ++i) {
    if (!(box.lower[i] >= 0.0 && box.lower[i] <= box.upper[i] && box.upper[i] <= 1.0))
      throw std::invalid_argument("BoundProblem: box bounds must satisfy 0 <= p_l <= p_u <= 1");
  }
  if (!box.contains(pi)) throw std::invalid_argument("BoundProblem: pi lies outside the box");
  if (!box.feasible()) throw std::invalid_argument("BoundProblem: box admits no probability vector");
  if (!support.empty() && support.rows() != M) throw std::invalid_argument("BoundProblem: support must have M rows");
}

MilpModel theorem1_model(const BoundProblem& prob, double* constant_term) {
  prob.validate();
  return mass_shift_model(prob.cost, prob.pi, prob.box, constant_term);
}

MilpModel xi_model(const BoundProblem& prob, const VertexDecomposition& vertex, double* constant_term) {
  prob.validate();
  if (vertex.v.size() != prob.size()) throw std::invalid_argument("xi_model: vertex size differs from M");
  // Coordinates at p_l can only gain and those at p_u only lose, so at most
  // the free coordinate keeps a binary choice.
  return mass_shift_model(prob.cost, vertex.v, prob.box, constant_term);
}

BoundResult epsilon_theorem1(const BoundProblem& prob, const BoundOptions& options) {
  double constant = 0.0;
  const MilpModel model = theorem1_model(prob, &constant);
  BoundResult result;
  result.method = BoundMethod::theorem1;
  result.report = solve_max_milp(model, options.milp);
  if (result.report.status == SolveStatus::node_limit || result.report.status == SolveStatus::time_limit)
    throw SolverLimitError("epsilon_theorem1: solver stopped at its " + to_string(result.report.status),
                           result.report);
  if (!result.report.optimal())
    throw std::runtime_error("epsilon_theorem1: unexpected solver status " + to_string(result.report.status));
  const double eps_rho = constant + result.report.objective;
  result.value = root(eps_rho, prob.rho);
  result.components = {{"epsilon_rho", eps_rho}, {"diagonal_term", constant}};
  return result;
}

BoundResult xi_prop2(const BoundProblem& prob, const Config& cfg, const BoundOptions& options) {
  prob.validate();
  if (prob.support.rows() != prob.size()) throw std::invalid_argument("xi_prop2: representatives are required");
  const VertexDecomposition vertex = closest_vertex(prob.pi, prob.box, prob.norm_order, options.vertex_node_budget);

  double constant = 0.0;
  const MilpModel model = xi_model(prob, vertex, &constant);
  if (free_binaries(model) > 1) throw std::logic_error("xi_prop2: more than one binary choice left");

  BoundResult result;
  result.method = BoundMethod::prop2;
  result.report.status = SolveStatus::optimal;
  result.report.nodes = 0;
  double best = -kInfinity;
  std::vector<double> best_solution;
  // Enumerate the (at most two) assignments of the free binary.
  std::vector<std::pair<std::size_t, double>> choices;
  for (std::size_t idx : model.binary_indices)
    if (model.base.lower[idx] < model.base.upper[idx]) choices = {{idx, 0.0}, {idx, 1.0}};
  if (choices.empty()) choices.push_back({model.base.num_variables(), 0.0});
  for (const auto& [idx, value] : choices) {
    LinearProgram lp = model.base;
    if (idx < lp.num_variables()) lp.lower[idx] = lp.upper[idx] = value;
    const SolveReport part = solve_lp(lp);
    accumulate(result.report, part);
    if (part.optimal() && part.objective > best) {
      best = part.objective;
      best_solution = part.solution;
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("xi_prop2: no feasible assignment");
  result.report.objective = best;
  result.report.solution = std::move(best_solution);

  Config transport_cfg = cfg;
  transport_cfg.rho = prob.rho;
  transport_cfg.norm_order = prob.norm_order;
  const double transport =
      wasserstein(DiscreteDistribution(prob.support, vertex.v), DiscreteDistribution(prob.support, prob.pi),
                  transport_cfg);
  const double xi_rho = constant + best;
  const double xi = root(xi_rho, prob.rho);
  result.value = transport + xi;
  result.components = {{"transport", transport},
                       {"xi", xi},
                       {"xi_rho", xi_rho},
                       {"vertex_distance", vertex.distance},
                       {"vertex_exact", vertex.exact ? 1.0 : 0.0}};
  return result;
}

BoundResult analytic_bound(const BoundProblem& prob, double diameter) {
  prob.validate();
  if (!(diameter > 0.0) || !std::isfinite(diameter)) throw std::invalid_argument("analytic_bound: diameter must be > 0");
  double eps1 = 0.0;
  double width = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    eps1 += prob.cost(i, i) * prob.box.upper[i];
    width += prob.box.upper[i] - prob.box.lower[i];
  }
  const double eps2 = std::pow(diameter, prob.rho) * width;
  BoundResult result;
  result.method = BoundMethod::analytic;
  result.value = root(eps1 + eps2, prob.rho);
  result.components = {{"eps1", eps1}, {"eps2", eps2}};
  result.report.status = SolveStatus::optimal;
  return result;
}

BoundResult fournier_baseline(std::int64_t N, double beta, const Config& cfg, double diameter,
                              double moment_constant) {
  if (N <= 0) throw std::invalid_argument("fournier_baseline: N must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("fournier_baseline: beta must lie in (0, 1)");
  if (!(diameter > 0.0) || !std::isfinite(diameter))
    throw std::invalid_argument("fournier_baseline: diameter must be > 0");
  if (!(moment_constant >= 0.0) || !std::isfinite(moment_constant))
    throw std::invalid_argument("fournier_baseline: moment constant must be finite and >= 0");
  if (!(cfg.rho >= 1.0)) throw std::invalid_argument("fournier_baseline: rho must be >= 1");
  const double tau = diameter * std::pow(2.0 * std::log(1.0 / beta) / static_cast<double>(N), 1.0 / (2.0 * cfg.rho));
  BoundResult result;
  result.method = BoundMethod::fournier;
  result.value = moment_constant + tau;
  result.components = {{"moment_constant", moment_constant}, {"tau", tau}};
  result.report.status = SolveStatus::optimal;
  return result;
}

}  // namespace wcert
