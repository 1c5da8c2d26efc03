#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rocaudit/error.hpp"
#include "rocaudit/numeric.hpp"
#include "rocaudit/robustness.hpp"
#include "rocaudit/roc.hpp"

namespace rocaudit {
namespace {

// Phi(1) from an independent reference implementation (scipy.stats.norm.cdf).
constexpr double kPhiOne = 0.8413447460685429;

Cohort pair(double neg, double pos) {
  return Cohort("pair", {neg, pos}, {0, 1});
}

PerturbationSpec bias_spec(double lo, double hi, std::size_t grid = 101) {
  auto s = PerturbationSpec::bias_defaults();
  s.sigma_min = lo;
  s.sigma_max = hi;
  s.grid_points = grid;
  return s;
}

PerturbationSpec noise_spec(double lo, double hi, std::size_t grid = 101) {
  auto s = PerturbationSpec::noise_defaults();
  s.sigma_min = lo;
  s.sigma_max = hi;
  s.grid_points = grid;
  return s;
}

TEST(PerturbationSpec, Defaults) {
  const auto b = PerturbationSpec::bias_defaults();
  EXPECT_EQ(b.sigma_min, 0.0);
  EXPECT_EQ(b.sigma_max, 1.0);
  EXPECT_EQ(b.grid_points, 101u);
  const auto n = PerturbationSpec::noise_defaults();
  EXPECT_EQ(n.sigma_min, 0.0);
  EXPECT_EQ(n.sigma_max, 0.5);
  EXPECT_EQ(n.mc_draws, 0u);
}

TEST(PerturbationSpec, RejectsBadRanges) {
  EXPECT_THROW(noise_spec(0.3, 0.3).check(), Error);
  EXPECT_THROW(noise_spec(0.5, 0.1).check(), Error);
  EXPECT_THROW(bias_spec(-0.1, 1.0).check(), Error);
  EXPECT_THROW(bias_spec(0.0, 1.0, 1).check(), Error);
  EXPECT_THROW(noise_robustness(pair(0, 1), noise_spec(0.2, 0.2)), Error);
}

TEST(BiasPerturb, Examples) {
  const Cohort c("c", {0.0, 1.0}, {0, 1});
  EXPECT_EQ(bias_perturb(c, 0.0), c);
  const auto shifted = bias_perturb(c, 0.3);
  EXPECT_EQ(shifted.scores()[0], 0.0);
  EXPECT_EQ(shifted.scores()[1], 1.0 - 0.3);

  const Cohort d("d", {0.8, 0.5, 0.9}, {1, 0, 1});
  const auto big = bias_perturb(d, 1.0);
  EXPECT_NEAR(big.scores()[0], -0.2, 1e-15);
  EXPECT_EQ(big.scores()[1], 0.5);
  EXPECT_NEAR(big.scores()[2], -0.1, 1e-15);
  EXPECT_EQ(big.labels()[0], 1);
}

TEST(BiasPerturb, NegativesUntouchedAndCurveNonincreasing) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 30);
    double prev = 2.0;
    for (double sigma = 0.0; sigma <= 1.2; sigma += 0.05) {
      const auto p = bias_perturb(c, sigma);
      EXPECT_EQ(p.negative_scores(), c.negative_scores());
      const double a = auroc(p);
      EXPECT_LE(a, prev);
      prev = a;
    }
  }
}

TEST(BiasRobustness, PointMass) {
  const auto r = bias_robustness(pair(0.0, 1.0), bias_spec(0.0, 2.0));
  EXPECT_EQ(r.raw_integral, 1.0);
  EXPECT_EQ(r.baseline_auroc, 1.0);
  EXPECT_EQ(r.score, 1.0);
  EXPECT_EQ(r.normalized_score, 0.5);
}

TEST(BiasRobustness, SinglePairPartialRange) {
  const auto r = bias_robustness(pair(0.4, 0.8), bias_spec(0.0, 1.0));
  EXPECT_EQ(r.raw_integral, 0.4);
  EXPECT_EQ(r.score, 0.4);
}

TEST(BiasRobustness, SeparatedBeyondRange) {
  const double eps = 0.01;
  const Cohort c("c", {0.1, 0.2, 0.5, 0.9}, {0, 0, 1, 1});
  const auto r = bias_robustness(c, bias_spec(0.0, eps));
  EXPECT_DOUBLE_EQ(r.raw_integral, eps);
  EXPECT_DOUBLE_EQ(r.normalized_score, 1.0);
}

TEST(BiasRobustness, CurveSamplesGrid) {
  const auto r = bias_robustness(pair(0.4, 0.8), bias_spec(0.0, 1.0, 11));
  ASSERT_EQ(r.curve.size(), 11u);
  EXPECT_EQ(r.curve.front().sigma, 0.0);
  EXPECT_EQ(r.curve.back().sigma, 1.0);
  EXPECT_EQ(r.curve[2].auroc, 1.0);  // sigma 0.2 < gap 0.4
  EXPECT_EQ(r.curve[6].auroc, 0.0);  // sigma 0.6 > gap
}

TEST(BiasRobustness, ExactIntegralMatchesFineTrapezoid) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_continuous_cohort(rng, 2, 25);
    if (auroc(c) == 0.0) continue;
    const auto r = bias_robustness(c, bias_spec(0.0, 1.0));
    const double oracle = testing::trapezoid_oracle(
        [&](double s) { return auroc(bias_perturb(c, s)); }, 0.0, 1.0, 10001);
    EXPECT_NEAR(r.raw_integral, oracle, 2.0 * 1.0 / 1e4);
  }
}

TEST(BiasRobustness, ZeroBaseline) {
  try {
    bias_robustness(pair(1.0, 0.0), bias_spec(0.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroBaseline);
  }
  EXPECT_THROW(noise_robustness(pair(1.0, 0.0), noise_spec(0.0, 0.5)), Error);
}

TEST(NoiseExpectedAuroc, SinglePair) {
  EXPECT_NEAR(noise_expected_auroc(pair(0.0, 1.0), 1.0 / std::numbers::sqrt2),
              kPhiOne, 1e-12);
}

TEST(NoiseExpectedAuroc, ZeroSigmaIsAuroc) {
  const Cohort c("four", {0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
  EXPECT_EQ(noise_expected_auroc(c, 0.0), auroc(c));
}

TEST(NoiseExpectedAuroc, DiffusionLimitAndRange) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 40);
    EXPECT_NEAR(noise_expected_auroc(c, 1e6), 0.5, 1e-3);
    for (double sigma : {0.01, 0.1, 1.0, 10.0}) {
      const double v = noise_expected_auroc(c, sigma);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(NoiseRobustness, SinglePairMatchesFineTrapezoid) {
  const auto r = noise_robustness(pair(0.0, 1.0), noise_spec(0.0, 1.0, 129));
  // grid 129 is already odd.
  EXPECT_EQ(r.curve.size(), 129u);
  const double oracle = testing::trapezoid_oracle(
      [](double s) {
        return 0.5 * std::erfc(-1.0 / (s * std::numbers::sqrt2 *
                                       std::numbers::sqrt2));
      },
      0.0, 1.0, 10001);
  EXPECT_NEAR(r.raw_integral, oracle, 1e-4);
}

TEST(NoiseRobustness, EvenGridBumpedToOdd) {
  const auto r = noise_robustness(pair(0.0, 1.0), noise_spec(0.0, 0.5, 100));
  EXPECT_EQ(r.curve.size(), 101u);
  EXPECT_EQ(r.spec.grid_points, 101u);
}

TEST(NoiseRobustness, SeparatedCohortBounds) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> neg(5), pos(5);
    for (double& x : neg) x = unit(rng) * 0.4;
    for (double& x : pos) x = 0.6 + unit(rng) * 0.4;
    const auto c = make_cohort("sep", neg, pos);
    const double hi = 0.1 + unit(rng);
    const auto r = noise_robustness(c, noise_spec(0.0, hi, 51));
    EXPECT_LE(r.score, hi);
    for (std::size_t i = 1; i < r.curve.size(); ++i) {
      EXPECT_LE(r.curve[i].auroc, r.curve[i - 1].auroc);
    }
  }
}

TEST(Robustness, ScoreRelations) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 30);
    if (auroc(c) == 0.0) continue;
    for (const auto& r : {bias_robustness(c, bias_spec(0.1, 0.9)),
                          noise_robustness(c, noise_spec(0.0, 0.5))}) {
      const double width = r.spec.sigma_max - r.spec.sigma_min;
      EXPECT_GE(r.normalized_score, 0.0);
      EXPECT_LE(r.normalized_score, 1.0 / r.baseline_auroc + 1e-12);
      EXPECT_NEAR(r.score, r.normalized_score * width, 1e-12);
      for (std::size_t i = 1; i < r.curve.size(); ++i) {
        EXPECT_LT(r.curve[i - 1].sigma, r.curve[i].sigma);
      }
      for (const auto& p : r.curve) {
        EXPECT_GE(p.auroc, 0.0);
        EXPECT_LE(p.auroc, 1.0);
      }
    }
  }
}

TEST(MonteCarlo, DeterministicForFixedSeed) {
  const Cohort c("four", {0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
  const double a = monte_carlo_noise_auroc(c, 0.2, 5000, 42);
  const double b = monte_carlo_noise_auroc(c, 0.2, 5000, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, monte_carlo_noise_auroc(c, 0.2, 5000, 43));
}

TEST(MonteCarlo, MatchesAnalyticSinglePair) {
  const double mc = monte_carlo_noise_auroc(
      pair(0.0, 1.0), 1.0 / std::numbers::sqrt2, 100000, 2024);
  EXPECT_NEAR(mc, kPhiOne, 0.01);
}

TEST(MonteCarlo, DiffusionLimit) {
  const Cohort c("four", {0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
  EXPECT_NEAR(monte_carlo_noise_auroc(c, 1e6, 100000, 1), 0.5, 0.02);
}

TEST(MonteCarlo, RejectsBadArguments) {
  EXPECT_THROW(monte_carlo_noise_auroc(pair(0, 1), 0.0, 10, 1), Error);
  EXPECT_THROW(monte_carlo_noise_auroc(pair(0, 1), 0.1, 0, 1), Error);
}

TEST(NoiseRobustness, MonteCarloCurveWhenEnabled) {
  auto spec = noise_spec(0.0, 0.5, 5);
  spec.mc_draws = 2000;
  spec.mc_seed = 7;
  const auto r = noise_robustness(pair(0.2, 0.6), spec);
  ASSERT_EQ(r.mc_curve.size(), r.curve.size());
  EXPECT_EQ(r.mc_curve[0], r.curve[0].auroc);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    EXPECT_NEAR(r.mc_curve[i], r.curve[i].auroc, 0.05);
  }
}

TEST(Quadrature, SimpsonExactForCubics) {
  const auto xs = linspace(0.0, 2.0, 5);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(x * x * x - x + 1.0);
  EXPECT_NEAR(simpson(ys, 0.0, 2.0), 4.0, 1e-14);
  EXPECT_THROW(simpson(std::vector<double>(4, 1.0), 0.0, 1.0), Error);
}

TEST(NormalCdf, ReferenceValues) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), kPhiOne, 1e-15);
  // scipy.stats.norm.cdf(-3), norm.cdf(2.5)
  EXPECT_NEAR(normal_cdf(-3.0), 0.0013498980316300933, 1e-15);
  EXPECT_NEAR(normal_cdf(2.5), 0.9937903346742238, 1e-15);
}

}  // namespace
}  // namespace rocaudit

namespace rocaudit {
namespace {

// Tied pairs earn half credit only at sigma = 0 exactly, a null set, so an
// all-tied cohort has AUROC 0.5 yet a zero bias integral.
TEST(BiasRobustness, AllTiedCohortIntegratesToZero) {
  const Cohort c("tied", {0.4, 0.4, 0.4}, {0, 1, 1});
  const auto r = bias_robustness(c, PerturbationSpec::bias_defaults());
  EXPECT_EQ(r.baseline_auroc, 0.5);
  EXPECT_EQ(r.raw_integral, 0.0);
  EXPECT_EQ(r.normalized_score, 0.0);
}

}  // namespace
}  // namespace rocaudit
