#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace rocaudit {

/// Paired model outputs and binary ground-truth labels for one dataset split.
///
/// Construction enforces the invariants: equal nonzero lengths, finite
/// scores, labels in {0, 1}. A Cohort may still hold a single class; use
/// validate_for_roc() before anything that needs both classes.
class Cohort {
 public:
  Cohort(std::string name, std::vector<double> scores,
         std::vector<std::uint8_t> labels);

  const std::string& name() const noexcept { return name_; }
  std::span<const double> scores() const noexcept { return scores_; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return scores_.size(); }

  std::size_t positive_count() const noexcept { return positives_; }
  std::size_t negative_count() const noexcept { return size() - positives_; }

  // Class-conditional scores in original row order.
  std::vector<double> positive_scores() const;
  std::vector<double> negative_scores() const;

  // Same labels and name, scores replaced (length must match).
  Cohort with_scores(std::vector<double> scores) const;

  friend bool operator==(const Cohort&, const Cohort&) = default;

 private:
  std::string name_;
  std::vector<double> scores_;
  std::vector<std::uint8_t> labels_;
  std::size_t positives_ = 0;
};

// Builds a cohort from class-conditional samples (negatives first).
Cohort make_cohort(std::string name, std::span<const double> negatives,
                   std::span<const double> positives);

enum class InputFormat { Csv, Jsonl };

struct IngestSchema {
  std::string score_column = "score";
  std::string label_column = "label";
  InputFormat format = InputFormat::Csv;

  // Throws InvalidArgument if the column names are empty or equal.
  void check() const;
};

Cohort parse_cohort(std::istream& source, const IngestSchema& schema,
                    const std::string& name);
Cohort parse_cohort_file(const std::filesystem::path& path,
                         const IngestSchema& schema, const std::string& name);

// Writes the cohort in the schema's format with 17 significant digits.
void write_cohort(std::ostream& sink, const Cohort& cohort,
                  const IngestSchema& schema);

// Returns the cohort unchanged if it holds both classes; SingleClass otherwise.
const Cohort& validate_for_roc(const Cohort& cohort);

}  // namespace rocaudit
