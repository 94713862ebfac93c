#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "arfs/error.hpp"
#include "arfs/stats.hpp"
#include "unit/oracles.hpp"

using namespace arfs;

TEST(TQuantile, KnownTableValues) {
  EXPECT_NEAR(t_quantile(0.975, 1), 12.706204736, 1e-6);
  EXPECT_NEAR(t_quantile(0.975, 5), 2.570581836, 1e-6);
  EXPECT_NEAR(t_quantile(0.95, 10), 1.812461123, 1e-6);
  EXPECT_NEAR(t_quantile(0.5, 7), 0.0, 1e-12);
  EXPECT_NEAR(t_quantile(0.025, 5), -2.570581836, 1e-6);
  EXPECT_NEAR(t_quantile(0.975, 10), oracle::t_quantile_upper(0.025, 10), 1e-9);
  EXPECT_NEAR(t_quantile(0.975, 1e6), 1.959964, 1e-3);
}

TEST(TQuantile, Antisymmetry) {
  for (double q : {1e-6, 0.01, 0.2, 0.45}) {
    for (double dof : {1.0, 4.0, 49.0}) {
      EXPECT_NEAR(t_upper_quantile(q, dof), -t_quantile(q, dof),
                  1e-10 * std::max(1.0, std::abs(t_quantile(q, dof))));
    }
  }
}

TEST(TQuantile, MatchesNumericIntegrationOracle) {
  for (double prob : {0.6, 0.9, 0.975, 0.999}) {
    for (double dof : {1.0, 2.0, 5.0, 49.0, 1000.0}) {
      const double want = oracle::t_quantile_upper(1.0 - prob, dof);
      EXPECT_NEAR(t_quantile(prob, dof), want, 1e-6 * std::max(1.0, want))
          << "prob " << prob << " dof " << dof;
    }
  }
}

TEST(TQuantile, ExtremeUpperTail) {
  for (double dof : {1.0, 49.0}) {
    const double want = oracle::t_quantile_upper(5e-7, dof);
    EXPECT_NEAR(t_upper_quantile(5e-7, dof), want, 1e-6 * want) << dof;
    EXPECT_NEAR(t_quantile(1.0 - 5e-7, dof), want, 1e-6 * want) << dof;
  }
}

TEST(TQuantile, CdfRoundTrip) {
  for (double dof : {1.0, 3.0, 30.0}) {
    for (double t : {-4.0, -0.5, 0.0, 1.0, 6.0}) {
      EXPECT_NEAR(t_quantile(t_cdf(t, dof), dof), t, 1e-8);
    }
  }
}

TEST(TQuantile, RejectsBadArguments) {
  EXPECT_THROW(t_quantile(0.0, 5), InvalidArgument);
  EXPECT_THROW(t_quantile(1.0, 5), InvalidArgument);
  EXPECT_THROW(t_quantile(0.5, 0.5), InvalidArgument);
}

TEST(PredictionInterval, HandComputedCase) {
  // {0, 2}: mean 1, sd sqrt(2), n 2, t(0.75, 1) = 1 -> 1 +- sqrt(2) * sqrt(1.5)
  const std::vector<double> s{0.0, 2.0};
  const auto iv = prediction_interval(s, 0.5);
  EXPECT_NEAR(iv.mean, 1.0, 1e-12);
  EXPECT_NEAR(iv.sd, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(iv.lower, 1.0 - std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(iv.upper, 1.0 + std::sqrt(3.0), 1e-9);
  EXPECT_TRUE(iv.contains(1.0));
  EXPECT_FALSE(iv.contains(3.0));
}

TEST(PredictionInterval, ZeroVarianceCollapsesToPoint) {
  const std::vector<double> s(10, 0.25);
  const auto iv = prediction_interval(s, 1e-6);
  EXPECT_EQ(iv.lower, 0.25);
  EXPECT_EQ(iv.upper, 0.25);
  EXPECT_TRUE(iv.contains(0.25));
}

TEST(PredictionInterval, WidthShrinksAsPGrows) {
  const std::vector<double> s{1, 2, 3, 4, 5, 6};
  double previous = std::numeric_limits<double>::infinity();
  for (double p : {1e-6, 1e-3, 0.05, 0.2, 0.5, 0.9}) {
    const auto iv = prediction_interval(s, p);
    EXPECT_LT(iv.upper - iv.lower, previous);
    previous = iv.upper - iv.lower;
    EXPECT_NEAR(iv.lower + iv.upper, 2.0 * iv.mean, 1e-12);
    EXPECT_LE(iv.lower, iv.mean);
    EXPECT_LE(iv.mean, iv.upper);
  }
}

TEST(PredictionInterval, WidthDoesNotGrowWithNForFixedMoments) {
  // {-1, 1} repeated keeps mean 0; the sample sd shrinks towards 1 as n grows.
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t half : {1u, 2u, 5u, 25u}) {
    std::vector<double> s;
    for (std::size_t i = 0; i < half; ++i) {
      s.push_back(-1.0);
      s.push_back(1.0);
    }
    const auto iv = prediction_interval(s, 0.01);
    EXPECT_LE(iv.upper - iv.lower, previous);
    previous = iv.upper - iv.lower;
  }
}

TEST(PredictionInterval, Errors) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(prediction_interval(one, 0.1), InvalidArgument);
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(prediction_interval(two, 0.0), InvalidArgument);
  EXPECT_THROW(prediction_interval(two, 1.0), InvalidArgument);
}

TEST(PredictionInterval, MonteCarloCoverage) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  int covered = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> s(20);
    for (auto& v : s) v = normal(rng);
    covered += prediction_interval(s, 0.1).contains(normal(rng)) ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(covered) / trials, 0.9, 0.02);
}

TEST(NullSamples, SizesAndDeterminism) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> cols(3, std::vector<double>(80));
  std::vector<double> y(80);
  for (std::size_t i = 0; i < 80; ++i) {
    for (auto& c : cols) c[i] = normal(gen);
    y[i] = cols[0][i] > 0 ? 1.0 : 0.0;
  }
  const Dataset ds(cols, y, Task::classification);
  ForestParams p;
  p.n_trees = 10;
  Rng a(5);
  Rng b(5);
  const auto x = sample_null(p, ds, 12, a);
  const auto z = sample_null(p, ds, 12, b);
  ASSERT_EQ(x.scores.size(), 12u);
  ASSERT_EQ(x.accuracies.size(), 12u);
  ASSERT_EQ(x.shadow_importances.size(), 12u);
  EXPECT_EQ(x.scores, z.scores);
  EXPECT_EQ(x.shadow_importances, z.shadow_importances);
  for (double v : x.accuracies) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  for (double v : x.shadow_importances) EXPECT_GE(v, 0.0);
  Rng c(5);
  EXPECT_THROW(sample_null(p, ds, 1, c), InvalidArgument);
}
