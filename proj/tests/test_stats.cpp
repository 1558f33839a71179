#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <random>

#include "oracles/binomial128.hpp"
#include "wcert/stats.hpp"

using namespace wcert;

TEST(ClopperPearson, BoundaryCases) {
  EXPECT_EQ(cp_lower(0, 100, 0.01), 0.0);
  EXPECT_EQ(cp_upper(50, 50, 0.001), 1.0);
  EXPECT_NEAR(cp_lower(20, 20, 0.05), std::pow(0.05, 1.0 / 20.0), 1e-12);
  EXPECT_NEAR(cp_lower(20, 20, 0.05), 0.86089, 1e-5);
  for (std::int64_t n : {1, 7, 100, 5000}) EXPECT_NEAR(cp_upper(0, n, 0.01), 1.0 - std::pow(0.01, 1.0 / n), 1e-12);
}

TEST(ClopperPearson, MatchesQuadPrecisionBisection) {
  EXPECT_NEAR(cp_lower(5, 10, 0.025), oracle::cp_lower_quad(5, 10, 0.025), 1e-12);
  EXPECT_NEAR(cp_upper(5, 10, 0.025), oracle::cp_upper_quad(5, 10, 0.025), 1e-12);
  // Frozen from the quad-precision oracle.
  EXPECT_NEAR(cp_lower(5, 10, 0.025), 0.18708602844739, 1e-12);
  EXPECT_NEAR(cp_upper(5, 10, 0.025), 0.81291397155261, 1e-12);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 300)(rng);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, n)(rng);
    const double alpha = std::pow(10.0, std::uniform_real_distribution<double>(-9.0, -0.5)(rng));
    EXPECT_NEAR(cp_lower(k, n, alpha), oracle::cp_lower_quad(k, n, alpha), 1e-12) << k << "/" << n;
    EXPECT_NEAR(cp_upper(k, n, alpha), oracle::cp_upper_quad(k, n, alpha), 1e-12) << k << "/" << n;
  }
}

TEST(ClopperPearson, LargeTrialsUseTheContinuedFraction) {
  const std::int64_t n = 200000;
  for (std::int64_t k : {std::int64_t{0}, std::int64_t{17}, std::int64_t{2000}, std::int64_t{100000}, n}) {
    EXPECT_NEAR(cp_lower(k, n, 1e-4), oracle::cp_lower_quad(k, n, 1e-4), 1e-12) << k;
    EXPECT_NEAR(cp_upper(k, n, 1e-4), oracle::cp_upper_quad(k, n, 1e-4), 1e-12) << k;
  }
}

TEST(ClopperPearson, ResidualReproducesAlpha) {
  for (std::int64_t n : {10, 100, 1000}) {
    for (std::int64_t k = 1; k < n; k += std::max<std::int64_t>(1, n / 7)) {
      for (double alpha : {0.025, 1e-4, 5e-9}) {
        EXPECT_NEAR(binomial_upper_tail(k, n, cp_lower(k, n, alpha)), alpha, 1e-10);
        EXPECT_NEAR(binomial_lower_tail(k, n, cp_upper(k, n, alpha)), alpha, 1e-10);
      }
    }
  }
}

TEST(ClopperPearson, MonotoneInCount) {
  for (std::int64_t n = 1; n <= 50; ++n) {
    for (std::int64_t k = 1; k <= n; ++k) {
      EXPECT_GE(cp_lower(k, n, 0.05), cp_lower(k - 1, n, 0.05));
      EXPECT_GE(cp_upper(k, n, 0.05), cp_upper(k - 1, n, 0.05));
    }
  }
}

TEST(ClopperPearson, RejectsBadArguments) {
  EXPECT_THROW(cp_lower(1, 10, 0.0), std::invalid_argument);
  EXPECT_THROW(cp_upper(1, 10, 1.0), std::invalid_argument);
  EXPECT_THROW(cp_lower(11, 10, 0.1), std::invalid_argument);
  EXPECT_THROW(cp_upper(-1, 10, 0.1), std::invalid_argument);
}

TEST(ClopperPearson, MonteCarloCoverage) {
  std::mt19937_64 rng(2023);
  const std::int64_t n = 100;
  for (double p : {0.1, 0.5, 0.9}) {
    std::binomial_distribution<std::int64_t> draw(n, p);
    int covered = 0;
    for (int t = 0; t < 10000; ++t) {
      const std::int64_t k = draw(rng);
      covered += cp_lower(k, n, 0.05) <= p && p <= cp_upper(k, n, 0.05);
    }
    EXPECT_GE(covered / 10000.0, 0.90) << "p=" << p;
  }
}

TEST(ProbabilityBox, AllMassInOneRegion) {
  const std::int64_t N = 500;
  const double beta = 0.01;
  const std::vector<std::int64_t> counts{N, 0, 0, 0};
  const ProbabilityBox box = build_probability_box(counts, N, beta);
  const double alpha = beta / 8.0;
  EXPECT_DOUBLE_EQ(box.per_region_alpha, alpha);
  EXPECT_NEAR(box.lower[0], std::pow(alpha, 1.0 / N), 1e-12);
  EXPECT_EQ(box.upper[0], 1.0);
  for (int i = 1; i < 4; ++i) {
    EXPECT_EQ(box.lower[i], 0.0);
    EXPECT_NEAR(box.upper[i], 1.0 - std::pow(alpha, 1.0 / N), 1e-12);
  }
}

TEST(ProbabilityBox, SingleRegion) {
  const ProbabilityBox box = build_probability_box(std::vector<std::int64_t>{40}, 40, 0.1);
  EXPECT_NEAR(box.lower[0], std::pow(0.05, 1.0 / 40.0), 1e-12);
  EXPECT_EQ(box.upper[0], 1.0);
}

TEST(ProbabilityBox, WidthsFollowTheNormalApproximation) {
  const std::int64_t N = 10000;
  const std::size_t M = 100;
  const double beta = 1e-6;
  const std::vector<std::int64_t> counts(M, N / static_cast<std::int64_t>(M));
  const ProbabilityBox box = build_probability_box(counts, N, beta);
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - beta / (2.0 * M));
  const double pi = 1.0 / M;
  const double approx = 2.0 * z * std::sqrt(pi * (1.0 - pi) / N) + 1.0 / N;
  for (std::size_t i = 0; i < M; ++i) {
    const double width = box.upper[i] - box.lower[i];
    EXPECT_GT(width, 0.8 * approx);
    EXPECT_LT(width, 1.2 * approx);
  }
}

TEST(ProbabilityBox, ContainsEmpiricalWeights) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const std::size_t M = 1 + t % 12;
    const std::int64_t N = 50 + 37 * t;
    std::vector<std::int64_t> counts(M, 0);
    std::uniform_int_distribution<std::size_t> cell(0, M - 1);
    for (std::int64_t n = 0; n < N; ++n) ++counts[cell(rng)];
    const ProbabilityBox box = build_probability_box(counts, N, 0.05);
    std::vector<double> pi(M);
    for (std::size_t i = 0; i < M; ++i) pi[i] = static_cast<double>(counts[i]) / N;
    EXPECT_TRUE(box.contains(pi, 0.0));
    EXPECT_TRUE(box.feasible());
  }
  EXPECT_THROW(build_probability_box(std::vector<std::int64_t>{3, 4}, 8, 0.05), std::invalid_argument);
}
