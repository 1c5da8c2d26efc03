#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rocaudit/cohort.hpp"

namespace rocaudit {

// Decision rule shared by every module: predict positive iff score >= tau.
inline constexpr const char* kDecisionRule = "score>=tau";

struct SensSpec {
  double sensitivity = 0.0;
  double specificity = 0.0;
};

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

// Breakpoints of the empirical ROC. The first point has threshold +inf and
// sits at (0, 0); the last has threshold -inf (below all scores) and sits at
// (1, 1). Interior thresholds are the distinct scores in strictly decreasing
// order, excluding the minimum, whose operating point is the -inf sentinel.
struct RocCurve {
  std::vector<RocPoint> points;
};

SensSpec sens_spec_at(const Cohort& cohort, double tau);

RocCurve roc_curve(const Cohort& cohort);

// Tie-corrected Mann-Whitney AUROC by sort-and-sweep, O(n log n).
double auroc(const Cohort& cohort);

// Same statistic by the explicit O(P*N) pair loop. Kept as a cross-check.
double auroc_pairwise_oracle(const Cohort& cohort);

namespace detail {
// Sort-and-sweep core over raw arrays; both classes must be present.
// `order` is scratch space reused across calls.
double auroc_sweep(std::span<const double> scores,
                   std::span<const std::uint8_t> labels,
                   std::vector<std::size_t>& order);
}  // namespace detail

// Trapezoidal area under the polyline.
double trapezoid_area(const RocCurve& curve);

}  // namespace rocaudit
