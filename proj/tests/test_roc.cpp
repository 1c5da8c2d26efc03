#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "rocaudit/error.hpp"
#include "rocaudit/roc.hpp"

namespace rocaudit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Cohort four_samples() {
  // labels [0,0,1,1], scores [0.1,0.4,0.35,0.8]
  return Cohort("four", {0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1});
}

std::vector<std::pair<double, double>> polyline(const RocCurve& c) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : c.points) out.emplace_back(p.fpr, p.tpr);
  return out;
}

TEST(SensSpecAt, WorkedExample) {
  const auto s = sens_spec_at(four_samples(), 0.5);
  EXPECT_EQ(s.sensitivity, 0.5);
  EXPECT_EQ(s.specificity, 1.0);
}

TEST(SensSpecAt, ExtremeThresholds) {
  const auto c = four_samples();
  const auto low = sens_spec_at(c, -kInf);
  EXPECT_EQ(low.sensitivity, 1.0);
  EXPECT_EQ(low.specificity, 0.0);
  const auto high = sens_spec_at(c, 0.81);
  EXPECT_EQ(high.sensitivity, 0.0);
  EXPECT_EQ(high.specificity, 1.0);
}

TEST(SensSpecAt, SingleClassPropagates) {
  EXPECT_THROW(sens_spec_at(Cohort("x", {0.1, 0.2}, {1, 1}), 0.5), Error);
}

TEST(SensSpecAt, MonotoneInTau) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 30);
    SensSpec prev = sens_spec_at(c, -0.05);
    for (double tau = -0.05; tau <= 1.05; tau += 0.01) {
      const auto s = sens_spec_at(c, tau);
      EXPECT_GE(s.sensitivity, 0.0);
      EXPECT_LE(s.sensitivity, 1.0);
      EXPECT_GE(s.specificity, 0.0);
      EXPECT_LE(s.specificity, 1.0);
      EXPECT_LE(s.sensitivity, prev.sensitivity);
      EXPECT_GE(s.specificity, prev.specificity);
      const auto [sens, spec] = testing::count_sens_spec(c, tau);
      EXPECT_EQ(s.sensitivity, sens);
      EXPECT_EQ(s.specificity, spec);
      prev = s;
    }
  }
}

TEST(RocCurve, WorkedExamplePolyline) {
  const auto curve = roc_curve(four_samples());
  const std::vector<std::pair<double, double>> expected{
      {0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}};
  EXPECT_EQ(polyline(curve), expected);
  ASSERT_EQ(curve.points.size(), 5u);
  EXPECT_EQ(curve.points.front().threshold, kInf);
  EXPECT_EQ(curve.points[1].threshold, 0.8);
  EXPECT_EQ(curve.points[2].threshold, 0.4);
  EXPECT_EQ(curve.points[3].threshold, 0.35);
  EXPECT_EQ(curve.points.back().threshold, -kInf);
}

TEST(RocCurve, PerfectSeparation) {
  const auto curve = roc_curve(Cohort("p", {0.1, 0.9}, {0, 1}));
  const std::vector<std::pair<double, double>> expected{{0, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(polyline(curve), expected);
}

TEST(RocCurve, StructuralInvariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 40);
    const auto curve = roc_curve(c);
    ASSERT_GE(curve.points.size(), 2u);
    EXPECT_EQ(curve.points.front().threshold, kInf);
    EXPECT_EQ(curve.points.front().fpr, 0.0);
    EXPECT_EQ(curve.points.front().tpr, 0.0);
    EXPECT_EQ(curve.points.back().threshold, -kInf);
    EXPECT_EQ(curve.points.back().fpr, 1.0);
    EXPECT_EQ(curve.points.back().tpr, 1.0);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      EXPECT_LT(curve.points[i].threshold, curve.points[i - 1].threshold);
      EXPECT_GE(curve.points[i].fpr, curve.points[i - 1].fpr);
      EXPECT_GE(curve.points[i].tpr, curve.points[i - 1].tpr);
    }
    // Each interior vertex is the operating point of its threshold.
    for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) {
      const auto s = sens_spec_at(c, curve.points[i].threshold);
      EXPECT_EQ(curve.points[i].tpr, s.sensitivity);
      EXPECT_NEAR(curve.points[i].fpr, 1.0 - s.specificity, 1e-15);
    }
  }
}

TEST(Auroc, Examples) {
  EXPECT_EQ(auroc(four_samples()), 0.75);
  EXPECT_EQ(auroc_pairwise_oracle(four_samples()), 0.75);
  EXPECT_EQ(auroc(Cohort("tied", {0.3, 0.3, 0.3, 0.3}, {0, 1, 0, 1})), 0.5);
  EXPECT_EQ(auroc(Cohort("sep", {0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1})), 1.0);
  EXPECT_EQ(auroc_pairwise_oracle(Cohort("pair", {0.3, 0.3}, {0, 1})), 0.5);
}

TEST(Auroc, SingleClassRejected) {
  const Cohort one("one", {0.1, 0.2, 0.3}, {0, 0, 0});
  EXPECT_THROW(auroc(one), Error);
  EXPECT_THROW(auroc_pairwise_oracle(one), Error);
  EXPECT_THROW(roc_curve(one), Error);
}

TEST(Auroc, MatchesPairwiseOracleAndTrapezoid) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 50, 1 + trial % 15);
    const double fast = auroc(c);
    EXPECT_NEAR(fast, auroc_pairwise_oracle(c), 1e-12);
    EXPECT_NEAR(fast, trapezoid_area(roc_curve(c)), 1e-12);
  }
}

TEST(Auroc, ComplementUnderNegation) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::random_continuous_cohort(rng, 2, 50);
    std::vector<double> negated(c.scores().begin(), c.scores().end());
    for (double& s : negated) s = -s;
    EXPECT_NEAR(auroc(c.with_scores(negated)), 1.0 - auroc(c), 1e-12);
  }
}

TEST(RocCurve, MonotoneInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::random_cohort(rng, 2, 40);
    std::vector<double> mapped(c.scores().begin(), c.scores().end());
    for (double& s : mapped) s = 3.0 * s * s * s + s - 2.0;
    const auto m = c.with_scores(mapped);
    EXPECT_EQ(polyline(roc_curve(c)), polyline(roc_curve(m)));
    EXPECT_EQ(auroc(c), auroc(m));
  }
}

}  // namespace
}  // namespace rocaudit
