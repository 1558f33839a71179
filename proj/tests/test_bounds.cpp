#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "instances.hpp"
#include "oracles/bound_enumeration.hpp"
#include "wcert/bounds.hpp"
#include "wcert/transport.hpp"

using namespace wcert;
using testing_support::random_problem;

namespace {

BoundProblem degenerate_problem(const std::vector<double>& pi, double rho) {
  std::mt19937_64 rng(1);
  BoundProblem prob = random_problem(rng, pi.size(), rho);
  prob.pi = pi;
  prob.box.lower = pi;
  prob.box.upper = pi;
  return prob;
}

double diagonal_mass(const BoundProblem& prob, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += prob.cost(i, i) * w[i];
  return s;
}

Config config_for(const BoundProblem& prob) {
  Config cfg;
  cfg.rho = prob.rho;
  cfg.norm_order = prob.norm_order;
  return cfg;
}

}  // namespace

TEST(EpsilonMilp, ZeroWidthBoxForcesDiagonalPlan) {
  for (double rho : {1.0, 2.0}) {
    const BoundProblem prob = degenerate_problem({0.2, 0.5, 0.3}, rho);
    const BoundResult r = epsilon_theorem1(prob);
    const double expected = diagonal_mass(prob, prob.pi);
    EXPECT_NEAR(r.components.at("epsilon_rho"), expected, 1e-12);
    EXPECT_NEAR(r.value, std::pow(expected, 1.0 / rho), 1e-12);
    EXPECT_NEAR(static_cast<double>(oracle::epsilon_rho_oracle(prob.cost, prob.pi, prob.box.lower, prob.box.upper)),
                expected, 1e-12);
  }
}

TEST(EpsilonMilp, SingleRegionIsItsRadius) {
  BoundProblem prob;
  prob.cost = Matrix(1, 1, 0.49);
  prob.pi = {1.0};
  prob.box.lower = {0.9};
  prob.box.upper = {1.0};
  prob.rho = 2.0;
  EXPECT_NEAR(epsilon_theorem1(prob).value, 0.7, 1e-12);
}

TEST(EpsilonMilp, MatchesLiteralBigMEnumeration) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t M = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    const double rho = trial % 2 ? 2.0 : 1.0;
    const BoundProblem prob = random_problem(rng, M, rho);
    const BoundResult r = epsilon_theorem1(prob);
    const double ref = static_cast<double>(oracle::epsilon_rho_oracle(prob.cost, prob.pi, prob.box.lower, prob.box.upper));
    EXPECT_NEAR(r.components.at("epsilon_rho"), ref, 1e-7) << "trial " << trial << " M=" << M;
    EXPECT_NEAR(r.value, std::pow(std::max(ref, 0.0), 1.0 / rho), 1e-7);
  }
}

TEST(EpsilonMilp, ReducedModelMatchesEnumerationOfItsOwnBinaries) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const BoundProblem prob = random_problem(rng, 6, 1.0);
    double constant = 0.0;
    const MilpModel model = theorem1_model(prob, &constant);
    const oracle::Answer ref = oracle::enumerate_milp(model);
    ASSERT_EQ(ref.outcome, oracle::Outcome::optimal);
    EXPECT_NEAR(epsilon_theorem1(prob).components.at("epsilon_rho"), constant + static_cast<double>(ref.value), 1e-9);
  }
}

TEST(EpsilonMilp, WideningTheBoxNeverDecreasesEpsilon) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const BoundProblem prob = random_problem(rng, 8, 1.0);
    BoundProblem wide = prob;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      wide.box.lower[i] = std::max(0.0, prob.box.lower[i] - testing_support::uniform(rng, 0.0, 0.05));
      wide.box.upper[i] = std::min(1.0, prob.box.upper[i] + testing_support::uniform(rng, 0.0, 0.05));
    }
    EXPECT_GE(epsilon_theorem1(wide).value, epsilon_theorem1(prob).value - 1e-9);
  }
}

TEST(EpsilonMilp, InvariantUnderRegionPermutation) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const BoundProblem prob = random_problem(rng, 9, 2.0);
    std::vector<std::size_t> perm(prob.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    BoundProblem shuffled = prob;
    for (std::size_t a = 0; a < perm.size(); ++a) {
      shuffled.pi[a] = prob.pi[perm[a]];
      shuffled.box.lower[a] = prob.box.lower[perm[a]];
      shuffled.box.upper[a] = prob.box.upper[perm[a]];
      for (std::size_t b = 0; b < perm.size(); ++b) shuffled.cost(a, b) = prob.cost(perm[a], perm[b]);
    }
    EXPECT_NEAR(epsilon_theorem1(shuffled).value, epsilon_theorem1(prob).value, 1e-9);
  }
}

TEST(EpsilonMilp, NodeLimitIsAnExplicitFailure) {
  std::mt19937_64 rng(14);
  const BoundProblem prob = random_problem(rng, 12, 1.0);
  BoundOptions opts;
  opts.milp.node_limit = 1;
  try {
    const BoundResult r = epsilon_theorem1(prob, opts);
    // A root node that is already integral is a legitimate optimum.
    EXPECT_EQ(r.report.nodes, 1u);
  } catch (const SolverLimitError& e) {
    EXPECT_EQ(e.report().status, SolveStatus::node_limit);
  }
}

TEST(EpsilonMilp, RejectsInconsistentProblems) {
  BoundProblem prob = degenerate_problem({0.5, 0.5}, 1.0);
  prob.pi = {0.7, 0.3};
  EXPECT_THROW(epsilon_theorem1(prob), std::invalid_argument);
  prob = degenerate_problem({0.5, 0.5}, 1.0);
  prob.cost(0, 1) = -1.0;
  EXPECT_THROW(epsilon_theorem1(prob), std::invalid_argument);
  prob = degenerate_problem({0.5, 0.5}, 1.0);
  prob.box.upper = {0.4, 0.4};
  prob.box.lower = {0.4, 0.4};
  EXPECT_THROW(epsilon_theorem1(prob), std::invalid_argument);
}

TEST(ClosestVertex, ZeroWidthBoxReturnsPi) {
  ProbabilityBox box;
  box.lower = box.upper = {0.25, 0.5, 0.25};
  const VertexDecomposition v = closest_vertex(std::vector<double>{0.25, 0.5, 0.25}, box, NormOrder::l2);
  EXPECT_EQ(v.v, box.lower);
  EXPECT_FALSE(v.free_index.has_value());
  EXPECT_EQ(v.lower_set.size() + v.upper_set.size(), 3u);
  EXPECT_EQ(v.distance, 0.0);
}

TEST(ClosestVertex, FullSimplexPicksNearestCorner) {
  ProbabilityBox box;
  box.lower = {0.0, 0.0};
  box.upper = {1.0, 1.0};
  const std::vector<double> pi{0.9, 0.1};
  for (NormOrder order : {NormOrder::l1, NormOrder::l2, NormOrder::linf}) {
    const VertexDecomposition v = closest_vertex(pi, box, order);
    EXPECT_EQ(v.v, (std::vector<double>{1.0, 0.0}));
    const VertexDecomposition g = sorted_gap_vertex(pi, box, order);
    EXPECT_EQ(g.v, (std::vector<double>{1.0, 0.0}));
  }
}

TEST(ClosestVertex, InfeasibleBoxIsRejected) {
  ProbabilityBox box;
  box.lower = {0.6, 0.6};
  box.upper = {0.9, 0.9};
  EXPECT_THROW(closest_vertex(std::vector<double>{0.5, 0.5}, box, NormOrder::l2), std::invalid_argument);
}

TEST(ClosestVertex, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t M = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const NormOrder order = std::array{NormOrder::l1, NormOrder::l2, NormOrder::linf}[trial % 3];
    const BoundProblem prob = random_problem(rng, M, 1.0, order);
    const VertexDecomposition v = closest_vertex(prob.pi, prob.box, order);
    const oracle::VertexSearch ref = oracle::exhaustive_vertex(prob.pi, prob.box.lower, prob.box.upper, order);
    ASSERT_GT(ref.count, 0u);
    EXPECT_TRUE(v.exact);
    EXPECT_NEAR(v.distance, ref.distance, 1e-12) << "trial " << trial;

    // Structural invariants of the decomposition.
    EXPECT_NEAR(std::accumulate(v.v.begin(), v.v.end(), 0.0), 1.0, 1e-12);
    std::vector<int> seen(M, 0);
    for (std::size_t i : v.lower_set) {
      ++seen[i];
      EXPECT_EQ(v.v[i], prob.box.lower[i]);
    }
    for (std::size_t j : v.upper_set) {
      ++seen[j];
      EXPECT_EQ(v.v[j], prob.box.upper[j]);
    }
    if (v.free_index) {
      ++seen[*v.free_index];
      EXPECT_GT(v.v[*v.free_index], prob.box.lower[*v.free_index]);
      EXPECT_LT(v.v[*v.free_index], prob.box.upper[*v.free_index]);
    }
    for (int s : seen) EXPECT_EQ(s, 1);

    const VertexDecomposition g = sorted_gap_vertex(prob.pi, prob.box, order);
    EXPECT_GE(g.distance, ref.distance - 1e-12);
  }
}

TEST(XiProp2, ZeroWidthBoxCollapses) {
  const BoundProblem prob = degenerate_problem({0.1, 0.6, 0.3}, 2.0);
  const BoundResult r = xi_prop2(prob, config_for(prob));
  EXPECT_NEAR(r.components.at("transport"), 0.0, 1e-15);
  EXPECT_NEAR(r.components.at("xi_rho"), diagonal_mass(prob, prob.pi), 1e-12);
  EXPECT_NEAR(r.value, r.components.at("transport") + r.components.at("xi"), 1e-15);
}

TEST(XiProp2, MatchesLiteralOneBinaryProgram) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t M = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const double rho = trial % 2 ? 2.0 : 1.0;
    const BoundProblem prob = random_problem(rng, M, rho);
    const BoundResult r = xi_prop2(prob, config_for(prob));
    const VertexDecomposition v = closest_vertex(prob.pi, prob.box, prob.norm_order);
    const double ref = static_cast<double>(oracle::xi_rho_oracle(prob.cost, v.v, prob.box.lower, prob.box.upper,
                                                                 v.lower_set, v.upper_set, v.free_index));
    EXPECT_NEAR(r.components.at("xi_rho"), ref, 1e-9) << "trial " << trial;

    Config cfg = config_for(prob);
    const double transport =
        wasserstein(DiscreteDistribution(prob.support, v.v), DiscreteDistribution(prob.support, prob.pi), cfg);
    EXPECT_NEAR(r.components.at("transport"), transport, 1e-12);
    EXPECT_NEAR(r.value, transport + r.components.at("xi"), 1e-12);
  }
}

TEST(XiProp2, NoFreeIndexMeansASingleLp) {
  ProbabilityBox box;
  box.lower = {0.0, 0.2, 0.1};
  box.upper = {0.7, 0.5, 0.3};
  std::mt19937_64 rng(3);
  BoundProblem prob = random_problem(rng, 3, 1.0);
  prob.box = box;
  prob.pi = {0.68, 0.21, 0.11};
  // The only vertex near pi is (0.7, 0.2, 0.1), which sits on bounds everywhere.
  const VertexDecomposition v = closest_vertex(prob.pi, prob.box, prob.norm_order);
  ASSERT_FALSE(v.free_index.has_value());
  EXPECT_EQ(v.v, (std::vector<double>{0.7, 0.2, 0.1}));
  const BoundResult r = xi_prop2(prob, config_for(prob));
  EXPECT_EQ(r.report.nodes, 1u);
}

TEST(BoundOrdering, AnalyticAndCompositeDominateEpsilon) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t M = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const double rho = trial % 2 ? 2.0 : 1.0;
    const BoundProblem prob = random_problem(rng, M, rho);
    const double eps = epsilon_theorem1(prob).value;
    EXPECT_GE(eps, 0.0);
    const double diameter = SupportBox::unit(2).diameter(prob.norm_order);
    EXPECT_LE(eps, analytic_bound(prob, diameter).value + 1e-9) << "trial " << trial;
    EXPECT_LE(eps, xi_prop2(prob, config_for(prob)).value + 1e-9) << "trial " << trial;
  }
}

TEST(AnalyticBound, ZeroWidthEqualsEpsilon) {
  const BoundProblem prob = degenerate_problem({0.3, 0.3, 0.4}, 1.0);
  const BoundResult a = analytic_bound(prob, std::sqrt(2.0));
  EXPECT_NEAR(a.components.at("eps2"), 0.0, 0.0);
  EXPECT_NEAR(a.value, epsilon_theorem1(prob).value, 1e-12);
}

TEST(AnalyticBound, SingleRegionFormula) {
  BoundProblem prob;
  prob.cost = Matrix(1, 1, 0.3);
  prob.pi = {1.0};
  prob.box.lower = {0.95};
  prob.box.upper = {1.0};
  prob.rho = 2.0;
  const double diameter = std::sqrt(2.0);
  const double expected = std::sqrt(0.3 * 1.0 + 2.0 * 0.05);
  EXPECT_NEAR(analytic_bound(prob, diameter).value, expected, 1e-12);
  EXPECT_THROW(analytic_bound(prob, 0.0), std::invalid_argument);
}

TEST(FournierBaseline, TauCollapsesToDiameter) {
  Config cfg;
  cfg.rho = 1.0;
  const std::int64_t N = 10;
  const double beta = std::exp(-5.0);  // 2 log(1/beta) = N
  const BoundResult r = fournier_baseline(N, beta, cfg, 1.7, 0.0);
  EXPECT_NEAR(r.value, 1.7, 1e-12);
}

TEST(FournierBaseline, QuadruplingNHalvesTau) {
  Config cfg;
  cfg.rho = 1.0;
  const double t1 = fournier_baseline(1000, 1e-6, cfg, std::sqrt(2.0), 0.0).components.at("tau");
  const double t4 = fournier_baseline(4000, 1e-6, cfg, std::sqrt(2.0), 0.0).components.at("tau");
  EXPECT_NEAR(t4, t1 / 2.0, 1e-12);
}

TEST(FournierBaseline, DeskScaleRow) {
  // d = 2, N = 1e3, rho = 1, beta = 1e-6, diameter sqrt(2); the moment
  // constant is external input chosen so the total is the tabulated 0.505.
  Config cfg;
  cfg.rho = 1.0;
  const double tau = std::sqrt(2.0) * std::sqrt(2.0 * std::log(1e6) / 1000.0);
  const BoundResult r = fournier_baseline(1000, 1e-6, cfg, std::sqrt(2.0), 0.505 - tau);
  EXPECT_NEAR(r.components.at("tau"), 0.23507880004768, 1e-12);
  EXPECT_NEAR(r.value, 0.505, 1e-12);
  EXPECT_THROW(fournier_baseline(0, 1e-6, cfg, 1.0, 0.0), std::invalid_argument);
}

TEST(BoundMethod, ParsesAndPrints) {
  for (BoundMethod m : {BoundMethod::theorem1, BoundMethod::prop2, BoundMethod::analytic, BoundMethod::fournier})
    EXPECT_EQ(parse_bound_method(to_string(m)), m);
  EXPECT_THROW(parse_bound_method("gurobi"), std::invalid_argument);
}
