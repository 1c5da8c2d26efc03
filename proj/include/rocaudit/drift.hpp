#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "rocaudit/cohort.hpp"

namespace rocaudit {

struct ThresholdDomain {
  double tau_min = 0.0;
  double tau_max = 1.0;

  // Throws InvalidArgument unless both are finite and tau_min < tau_max.
  void check() const;
};

// Squared (sens, spec) gap, constant on (tau_lo, tau_hi].
struct DriftSegment {
  double tau_lo;
  double tau_hi;
  double squared_gap;
};

struct DriftCurvePoint {
  double tau;
  double sens_v;
  double sens_t;
  double spec_v;
  double spec_t;
  double squared_gap;
};

struct DriftResult {
  ThresholdDomain domain;
  double score = 0.0;
  // Integrals of the sensitivity-only and specificity-only squared gaps;
  // they sum to `score` up to rounding.
  double sensitivity_score = 0.0;
  double specificity_score = 0.0;
  std::vector<DriftSegment> segments;
  std::vector<DriftCurvePoint> curve;
};

struct DriftOptions {
  ThresholdDomain domain;
  // Accept scores outside the domain; the integral then ignores the
  // operating points they would add.
  bool allow_out_of_domain = false;
  // Uniform tau samples in the reported curve.
  std::size_t curve_points = 101;
};

/// Integral over the domain of |S(validation, tau) - S(test, tau)|^2 where
/// S = (sensitivity, specificity). The integrand only changes at score
/// values, so the integral is summed exactly over the merged breakpoints.
DriftResult drift_score(const Cohort& validation, const Cohort& test,
                        const DriftOptions& options = {});

// Evaluates the squared gap at a single threshold.
DriftCurvePoint drift_point(const Cohort& validation, const Cohort& test,
                            double tau);

/// 2-Wasserstein distance between two empirical distributions, integrating
/// the squared quantile difference over the merged breakpoints
/// {k/|a|} U {l/|b|}.
double wasserstein2(std::span<const double> a, std::span<const double> b);

// Rows [V negatives, T positives], columns [V positives, T negatives]; the
// diagonal compares classes within a cohort.
struct WassersteinMatrix {
  std::array<std::array<double, 2>, 2> entries{};

  static constexpr std::array<std::string_view, 2> kRowLabels{"V:y=0",
                                                              "T:y=1"};
  static constexpr std::array<std::string_view, 2> kColumnLabels{"V:y=1",
                                                                 "T:y=0"};
};

WassersteinMatrix distance_matrix(const Cohort& validation, const Cohort& test);

}  // namespace rocaudit
