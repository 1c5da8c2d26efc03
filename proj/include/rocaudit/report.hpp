#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rocaudit/cohort.hpp"
#include "rocaudit/drift.hpp"
#include "rocaudit/robustness.hpp"
#include "rocaudit/roc.hpp"

namespace rocaudit {

inline constexpr const char* kSchemaVersion = "1.0";

// Every knob that influenced a run; echoed verbatim into the report.
struct RunConfig {
  IngestSchema schema;
  PerturbationSpec bias = PerturbationSpec::bias_defaults();
  PerturbationSpec noise = PerturbationSpec::noise_defaults();
  DriftOptions drift;
};

struct CohortSection {
  std::string name;
  std::size_t negatives = 0;
  std::size_t positives = 0;
  double auroc = 0.0;
  RocCurve roc;
  RobustnessResult bias;
  RobustnessResult noise;
};

struct Comparison {
  std::string validation;
  std::string test;
  DriftResult drift;
  WassersteinMatrix wasserstein;
  // Relative name of the emitted drift curve, when plots were written.
  std::optional<std::string> curve_file;
};

struct Report {
  std::string schema_version = kSchemaVersion;
  std::string decision_rule = kDecisionRule;
  RunConfig config;
  std::vector<CohortSection> cohorts;
  std::optional<Comparison> comparison;
};

// Assembles a report from results already computed on `cohorts`. Robustness
// vectors are parallel to `cohorts`; drift and matrix must be given together
// and only for exactly two cohorts (validation first).
Report build_report(const RunConfig& config, std::span<const Cohort> cohorts,
                    std::span<const RobustnessResult> bias,
                    std::span<const RobustnessResult> noise,
                    const std::optional<DriftResult>& drift = std::nullopt,
                    const std::optional<WassersteinMatrix>& matrix =
                        std::nullopt);

// Runs every analysis on one cohort, or on a (validation, test) pair.
Report evaluate(const RunConfig& config, std::span<const Cohort> cohorts);

// Deterministic JSON: fixed key order, reals at 17 significant digits,
// two-space indent, trailing newline.
std::string emit_json(const Report& report);

// Writes the CSV/SVG plot artifacts into `directory` (created if missing)
// and returns the paths written, in emission order.
std::vector<std::filesystem::path> emit_plot_data(
    const Report& report, const std::filesystem::path& directory);

// Short human-readable overview.
std::string format_summary(const Report& report);

}  // namespace rocaudit
