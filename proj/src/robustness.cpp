#include "rocaudit/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "rocaudit/error.hpp"
#include "rocaudit/numeric.hpp"
#include "rocaudit/roc.hpp"

namespace rocaudit {

std::string_view kind_name(PerturbationKind kind) {
  return kind == PerturbationKind::Bias ? "bias" : "noise";
}

PerturbationSpec PerturbationSpec::bias_defaults() {
  PerturbationSpec spec;
  spec.kind = PerturbationKind::Bias;
  spec.sigma_min = 0.0;
  spec.sigma_max = 1.0;
  return spec;
}

PerturbationSpec PerturbationSpec::noise_defaults() {
  PerturbationSpec spec;
  spec.kind = PerturbationKind::Noise;
  spec.sigma_min = 0.0;
  spec.sigma_max = 0.5;
  return spec;
}

void PerturbationSpec::check() const {
  if (!std::isfinite(sigma_min) || !std::isfinite(sigma_max)) {
    throw Error(ErrorKind::InvalidArgument, "sigma range must be finite");
  }
  if (sigma_min < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "sigma_min must be >= 0");
  }
  if (!(sigma_min < sigma_max)) {
    throw Error(ErrorKind::InvalidArgument,
                "sigma_min must be strictly below sigma_max");
  }
  if (grid_points < 2) {
    throw Error(ErrorKind::InvalidArgument, "grid_points must be >= 2");
  }
}

namespace {

double checked_baseline(const Cohort& cohort) {
  validate_for_roc(cohort);
  const double baseline = auroc(cohort);
  if (baseline == 0.0) {
    throw Error(ErrorKind::ZeroBaseline,
                "baseline AUROC of '" + cohort.name() +
                    "' is 0; robustness normalisation undefined");
  }
  return baseline;
}

void fill_scores(RobustnessResult& result) {
  const double width = result.spec.sigma_max - result.spec.sigma_min;
  result.score = result.raw_integral / result.baseline_auroc;
  result.normalized_score = result.score / width;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on (0, 1] from the top 53 bits.
double unit_open_closed(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

double one_noisy_auroc(const Cohort& cohort, double sigma, std::uint64_t seed,
                       std::size_t draw, std::vector<double>& noisy,
                       std::vector<std::size_t>& order) {
  std::mt19937_64 engine(splitmix64(seed ^ splitmix64(draw)));
  const auto scores = cohort.scores();
  noisy.assign(scores.begin(), scores.end());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < noisy.size(); i += 2) {
    // Box-Muller: one pair of uniforms yields two independent normals.
    const double radius = std::sqrt(-2.0 * std::log(unit_open_closed(engine)));
    const double angle = two_pi * unit_open_closed(engine);
    noisy[i] += sigma * radius * std::cos(angle);
    if (i + 1 < noisy.size()) noisy[i + 1] += sigma * radius * std::sin(angle);
  }
  return detail::auroc_sweep(noisy, cohort.labels(), order);
}

}  // namespace

Cohort bias_perturb(const Cohort& cohort, double sigma) {
  if (!(sigma >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "bias sigma must be >= 0");
  }
  std::vector<double> scores(cohort.scores().begin(), cohort.scores().end());
  const auto labels = cohort.labels();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) scores[i] -= sigma;
  }
  return cohort.with_scores(std::move(scores));
}

double bias_auroc(const Cohort& cohort, double sigma) {
  return auroc(bias_perturb(cohort, sigma));
}

RobustnessResult bias_robustness(const Cohort& cohort,
                                 const PerturbationSpec& spec) {
  spec.check();
  if (spec.kind != PerturbationKind::Bias) {
    throw Error(ErrorKind::InvalidArgument, "expected a bias spec");
  }
  RobustnessResult result;
  result.spec = spec;
  result.baseline_auroc = checked_baseline(cohort);

  const auto positives = cohort.positive_scores();
  const auto negatives = cohort.negative_scores();
  CompensatedSum acc;
  for (double p : positives) {
    for (double n : negatives) {
      acc.add(std::clamp(p - n, spec.sigma_min, spec.sigma_max) -
              spec.sigma_min);
    }
  }
  const double pairs = static_cast<double>(positives.size()) *
                       static_cast<double>(negatives.size());
  result.raw_integral = acc.value() / pairs;

  for (double sigma : linspace(spec.sigma_min, spec.sigma_max,
                               spec.grid_points)) {
    result.curve.push_back({sigma, bias_auroc(cohort, sigma)});
  }
  fill_scores(result);
  return result;
}

double noise_expected_auroc(const Cohort& cohort, double sigma) {
  validate_for_roc(cohort);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidArgument,
                "noise sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return auroc(cohort);
  const auto positives = cohort.positive_scores();
  const auto negatives = cohort.negative_scores();
  const double scale = 1.0 / (sigma * std::numbers::sqrt2);
  CompensatedSum acc;
  for (double p : positives) {
    for (double n : negatives) acc.add(normal_cdf((p - n) * scale));
  }
  const double pairs = static_cast<double>(positives.size()) *
                       static_cast<double>(negatives.size());
  return acc.value() / pairs;
}

RobustnessResult noise_robustness(const Cohort& cohort,
                                  const PerturbationSpec& spec) {
  spec.check();
  if (spec.kind != PerturbationKind::Noise) {
    throw Error(ErrorKind::InvalidArgument, "expected a noise spec");
  }
  RobustnessResult result;
  result.spec = spec;
  result.spec.grid_points = std::max<std::size_t>(spec.grid_points | 1, 3);
  result.baseline_auroc = checked_baseline(cohort);

  std::vector<double> values;
  for (double sigma : linspace(spec.sigma_min, spec.sigma_max,
                               result.spec.grid_points)) {
    const double value = noise_expected_auroc(cohort, sigma);
    result.curve.push_back({sigma, value});
    values.push_back(value);
    if (spec.mc_draws > 0) {
      result.mc_curve.push_back(
          sigma == 0.0 ? value
                       : monte_carlo_noise_auroc(cohort, sigma, spec.mc_draws,
                                                 spec.mc_seed));
    }
  }
  result.raw_integral = simpson(values, spec.sigma_min, spec.sigma_max);
  fill_scores(result);
  return result;
}

double monte_carlo_noise_auroc(const Cohort& cohort, double sigma,
                               std::size_t draws, std::uint64_t seed) {
  validate_for_roc(cohort);
  if (draws < 1) {
    throw Error(ErrorKind::InvalidArgument, "draws must be >= 1");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidArgument,
                "Monte Carlo sigma must be finite and > 0");
  }
  std::vector<double> per_draw(draws);
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, draws / 256 + 1);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::vector<double> noisy;
    std::vector<std::size_t> order;
    for (std::size_t k = begin; k < end; ++k) {
      per_draw[k] = one_noisy_auroc(cohort, sigma, seed, k, noisy, order);
    }
  };
  if (workers == 1) {
    run_range(0, draws);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (draws + workers - 1) / workers;
    for (std::size_t begin = 0; begin < draws; begin += chunk) {
      pool.emplace_back(run_range, begin, std::min(draws, begin + chunk));
    }
    for (auto& t : pool) t.join();
  }
  CompensatedSum acc;
  for (double v : per_draw) acc.add(v);
  return acc.value() / static_cast<double>(draws);
}

}  // namespace rocaudit
