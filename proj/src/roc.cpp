#include "rocaudit/roc.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "rocaudit/error.hpp"

namespace rocaudit {

namespace {

// Sample indices ordered by descending score.
std::vector<std::size_t> descending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  return order;
}

}  // namespace

SensSpec sens_spec_at(const Cohort& cohort, double tau) {
  validate_for_roc(cohort);
  std::size_t true_pos = 0;
  std::size_t true_neg = 0;
  const auto scores = cohort.scores();
  const auto labels = cohort.labels();
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const bool predicted_positive = scores[i] >= tau;
    if (labels[i] == 1 && predicted_positive) ++true_pos;
    if (labels[i] == 0 && !predicted_positive) ++true_neg;
  }
  return {static_cast<double>(true_pos) /
              static_cast<double>(cohort.positive_count()),
          static_cast<double>(true_neg) /
              static_cast<double>(cohort.negative_count())};
}

RocCurve roc_curve(const Cohort& cohort) {
  validate_for_roc(cohort);
  const auto scores = cohort.scores();
  const auto labels = cohort.labels();
  const auto order = descending_order(scores);
  const double pos = static_cast<double>(cohort.positive_count());
  const double neg = static_cast<double>(cohort.negative_count());

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t true_pos = 0;
  std::size_t false_pos = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == threshold; ++k) {
      if (labels[order[k]] == 1) {
        ++true_pos;
      } else {
        ++false_pos;
      }
    }
    curve.points.push_back({threshold, static_cast<double>(false_pos) / neg,
                            static_cast<double>(true_pos) / pos});
  }
  // The lowest score is already an operating point at (1, 1); it becomes the
  // "below all scores" sentinel rather than a duplicate vertex.
  curve.points.back().threshold = -std::numeric_limits<double>::infinity();
  return curve;
}

namespace detail {

double auroc_sweep(std::span<const double> scores,
                   std::span<const std::uint8_t> labels,
                   std::vector<std::size_t>& order) {
  order.resize(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Twice the Mann-Whitney U, kept integral so the result is exact up to the
  // final division.
  std::uint64_t twice_u = 0;
  std::uint64_t negatives_below = 0;
  std::uint64_t positives = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double value = scores[order[k]];
    std::uint64_t group_pos = 0;
    std::uint64_t group_neg = 0;
    for (; k < order.size() && scores[order[k]] == value; ++k) {
      if (labels[order[k]] == 1) {
        ++group_pos;
      } else {
        ++group_neg;
      }
    }
    twice_u += group_pos * (2 * negatives_below + group_neg);
    negatives_below += group_neg;
    positives += group_pos;
  }
  const double pairs =
      static_cast<double>(positives) * static_cast<double>(negatives_below);
  return static_cast<double>(twice_u) / (2.0 * pairs);
}

}  // namespace detail

double auroc(const Cohort& cohort) {
  validate_for_roc(cohort);
  std::vector<std::size_t> order;
  return detail::auroc_sweep(cohort.scores(), cohort.labels(), order);
}

double auroc_pairwise_oracle(const Cohort& cohort) {
  validate_for_roc(cohort);
  const auto positives = cohort.positive_scores();
  const auto negatives = cohort.negative_scores();
  std::uint64_t twice_u = 0;
  for (double p : positives) {
    for (double n : negatives) {
      if (p > n) {
        twice_u += 2;
      } else if (p == n) {
        twice_u += 1;
      }
    }
  }
  const double pairs = static_cast<double>(positives.size()) *
                       static_cast<double>(negatives.size());
  return static_cast<double>(twice_u) / (2.0 * pairs);
}

double trapezoid_area(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

}  // namespace rocaudit
