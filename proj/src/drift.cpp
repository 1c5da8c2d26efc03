#include "rocaudit/drift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rocaudit/error.hpp"
#include "rocaudit/numeric.hpp"
#include "rocaudit/roc.hpp"

namespace rocaudit {

void ThresholdDomain::check() const {
  if (!std::isfinite(tau_min) || !std::isfinite(tau_max) ||
      !(tau_min < tau_max)) {
    throw Error(ErrorKind::InvalidArgument,
                "threshold domain needs finite tau_min < tau_max");
  }
}

namespace {

// Sorted class-conditional scores; answers sens/spec queries in O(log n).
class OperatingPoints {
 public:
  explicit OperatingPoints(const Cohort& cohort)
      : positives_(cohort.positive_scores()),
        negatives_(cohort.negative_scores()) {
    std::sort(positives_.begin(), positives_.end());
    std::sort(negatives_.begin(), negatives_.end());
  }

  double sensitivity(double tau) const {
    const auto below = std::lower_bound(positives_.begin(), positives_.end(),
                                        tau) -
                       positives_.begin();
    return static_cast<double>(positives_.size() -
                               static_cast<std::size_t>(below)) /
           static_cast<double>(positives_.size());
  }

  double specificity(double tau) const {
    const auto below = std::lower_bound(negatives_.begin(), negatives_.end(),
                                        tau) -
                       negatives_.begin();
    return static_cast<double>(below) / static_cast<double>(negatives_.size());
  }

 private:
  std::vector<double> positives_;
  std::vector<double> negatives_;
};

DriftCurvePoint evaluate(const OperatingPoints& v, const OperatingPoints& t,
                         double tau) {
  DriftCurvePoint p{tau,
                    v.sensitivity(tau),
                    t.sensitivity(tau),
                    v.specificity(tau),
                    t.specificity(tau),
                    0.0};
  const double ds = p.sens_v - p.sens_t;
  const double dp = p.spec_v - p.spec_t;
  p.squared_gap = ds * ds + dp * dp;
  return p;
}

void check_in_domain(const Cohort& cohort, const ThresholdDomain& domain) {
  const auto scores = cohort.scores();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] < domain.tau_min || scores[i] > domain.tau_max) {
      throw Error(ErrorKind::ScoreOutsideDomain,
                  "cohort '" + cohort.name() + "' score " +
                      format_real(scores[i]) + " outside [" +
                      format_real(domain.tau_min) + ", " +
                      format_real(domain.tau_max) + "]",
                  i + 1);
    }
  }
}

}  // namespace

DriftResult drift_score(const Cohort& validation, const Cohort& test,
                        const DriftOptions& options) {
  validate_for_roc(validation);
  validate_for_roc(test);
  const ThresholdDomain& domain = options.domain;
  domain.check();
  if (!options.allow_out_of_domain) {
    check_in_domain(validation, domain);
    check_in_domain(test, domain);
  }

  std::vector<double> breaks{domain.tau_min, domain.tau_max};
  for (const Cohort* c : {&validation, &test}) {
    for (double s : c->scores()) {
      if (s > domain.tau_min && s < domain.tau_max) breaks.push_back(s);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const OperatingPoints v(validation);
  const OperatingPoints t(test);
  DriftResult result;
  result.domain = domain;
  CompensatedSum total;
  CompensatedSum sens_total;
  CompensatedSum spec_total;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    // Under the >= rule every cohort's (sens, spec) is constant on
    // (breaks[k], breaks[k+1]], so the right endpoint represents the piece.
    const double width = breaks[k + 1] - breaks[k];
    const auto p = evaluate(v, t, breaks[k + 1]);
    result.segments.push_back({breaks[k], breaks[k + 1], p.squared_gap});
    total.add(width * p.squared_gap);
    sens_total.add(width * (p.sens_v - p.sens_t) * (p.sens_v - p.sens_t));
    spec_total.add(width * (p.spec_v - p.spec_t) * (p.spec_v - p.spec_t));
  }
  result.score = total.value();
  result.sensitivity_score = sens_total.value();
  result.specificity_score = spec_total.value();

  if (options.curve_points >= 2) {
    for (double tau :
         linspace(domain.tau_min, domain.tau_max, options.curve_points)) {
      result.curve.push_back(evaluate(v, t, tau));
    }
  }
  return result;
}

DriftCurvePoint drift_point(const Cohort& validation, const Cohort& test,
                            double tau) {
  validate_for_roc(validation);
  validate_for_roc(test);
  return evaluate(OperatingPoints(validation), OperatingPoints(test), tau);
}

double wasserstein2(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::EmptySample, "wasserstein2 needs nonempty samples");
  }
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(a.begin(), a.end(), finite) ||
      !std::all_of(b.begin(), b.end(), finite)) {
    throw Error(ErrorKind::InvalidArgument,
                "wasserstein2 samples must be finite");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  // Quantile positions in units of 1 / (|a| * |b|): a's k-th step ends at
  // k * |b|, b's l-th at l * |a|. Integer positions make the merge exact.
  const std::uint64_t n = sa.size();
  const std::uint64_t m = sb.size();
  CompensatedSum acc;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t position = 0;
  while (i < n && j < m) {
    const std::uint64_t end_a = (i + 1) * m;
    const std::uint64_t end_b = (j + 1) * n;
    const std::uint64_t next = std::min(end_a, end_b);
    const double d = sa[i] - sb[j];
    acc.add(static_cast<double>(next - position) * d * d);
    position = next;
    if (next == end_a) ++i;
    if (next == end_b) ++j;
  }
  return std::sqrt(acc.value() /
                   (static_cast<double>(n) * static_cast<double>(m)));
}

WassersteinMatrix distance_matrix(const Cohort& validation,
                                  const Cohort& test) {
  validate_for_roc(validation);
  validate_for_roc(test);
  const auto v0 = validation.negative_scores();
  const auto v1 = validation.positive_scores();
  const auto t0 = test.negative_scores();
  const auto t1 = test.positive_scores();
  WassersteinMatrix m;
  m.entries[0][0] = wasserstein2(v0, v1);
  m.entries[0][1] = wasserstein2(v0, t0);
  m.entries[1][0] = wasserstein2(t1, v1);
  m.entries[1][1] = wasserstein2(t1, t0);
  return m;
}

}  // namespace rocaudit
