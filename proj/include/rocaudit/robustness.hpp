#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rocaudit/cohort.hpp"

namespace rocaudit {

enum class PerturbationKind { Bias, Noise };

std::string_view kind_name(PerturbationKind kind);

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::Bias;
  double sigma_min = 0.0;
  double sigma_max = 1.0;
  std::size_t grid_points = 101;
  std::size_t mc_draws = 0;  // noise only; 0 disables the Monte Carlo check
  std::uint64_t mc_seed = 0;

  static PerturbationSpec bias_defaults();   // [0, 1]
  static PerturbationSpec noise_defaults();  // [0, 0.5]

  // Throws InvalidArgument unless 0 <= sigma_min < sigma_max (both finite)
  // and grid_points >= 2.
  void check() const;
};

struct RobustnessPoint {
  double sigma;
  double auroc;
};

struct RobustnessResult {
  PerturbationSpec spec;
  double baseline_auroc = 0.0;
  std::vector<RobustnessPoint> curve;
  // Integral of the perturbed AUROC over [sigma_min, sigma_max].
  double raw_integral = 0.0;
  // raw_integral / baseline_auroc.
  double score = 0.0;
  // score / (sigma_max - sigma_min).
  double normalized_score = 0.0;
  // Monte Carlo AUROC at each curve sigma; empty unless mc_draws > 0.
  std::vector<double> mc_curve;
};

// Positive-class scores shifted down by sigma; negatives untouched.
Cohort bias_perturb(const Cohort& cohort, double sigma);

// AUROC of bias_perturb(cohort, sigma).
double bias_auroc(const Cohort& cohort, double sigma);

// The integral is exact: sigma -> AUROC is a step function, and each
// (positive, negative) pair with gap d contributes clamp(d, lo, hi) - lo.
// The curve is only sampled for reporting.
RobustnessResult bias_robustness(const Cohort& cohort,
                                 const PerturbationSpec& spec);

/// Expected AUROC when every score receives independent N(0, sigma^2) noise:
/// the mean over pairs of Phi((pos - neg) / (sigma * sqrt(2))). Returns
/// auroc(cohort) at sigma == 0.
double noise_expected_auroc(const Cohort& cohort, double sigma);

/// Simpson integral of noise_expected_auroc over the grid. An even
/// grid_points is bumped to the next odd count.
RobustnessResult noise_robustness(const Cohort& cohort,
                                  const PerturbationSpec& spec);

/// Mean AUROC over `draws` noisy replications. Replication k draws from its
/// own generator keyed by (seed, k), so the result does not depend on how
/// replications are spread over threads.
double monte_carlo_noise_auroc(const Cohort& cohort, double sigma,
                               std::size_t draws, std::uint64_t seed);

}  // namespace rocaudit
