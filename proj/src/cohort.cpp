#include "rocaudit/cohort.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "rocaudit/error.hpp"
#include "rocaudit/numeric.hpp"

namespace rocaudit {

Cohort::Cohort(std::string name, std::vector<double> scores,
               std::vector<std::uint8_t> labels)
    : name_(std::move(name)),
      scores_(std::move(scores)),
      labels_(std::move(labels)) {
  if (scores_.empty()) {
    throw Error(ErrorKind::EmptyInput, "cohort '" + name_ + "' has no samples");
  }
  if (scores_.size() != labels_.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "cohort '" + name_ + "': scores and labels differ in length");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw Error(ErrorKind::BadScore, "non-finite score", i + 1);
    }
    if (labels_[i] > 1) {
      throw Error(ErrorKind::BadLabel, "label must be 0 or 1", i + 1);
    }
    positives_ += labels_[i];
  }
}

std::vector<double> Cohort::positive_scores() const {
  std::vector<double> out;
  out.reserve(positives_);
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels_[i] == 1) out.push_back(scores_[i]);
  }
  return out;
}

std::vector<double> Cohort::negative_scores() const {
  std::vector<double> out;
  out.reserve(negative_count());
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels_[i] == 0) out.push_back(scores_[i]);
  }
  return out;
}

Cohort Cohort::with_scores(std::vector<double> scores) const {
  return Cohort(name_, std::move(scores), labels_);
}

Cohort make_cohort(std::string name, std::span<const double> negatives,
                   std::span<const double> positives) {
  std::vector<double> scores(negatives.begin(), negatives.end());
  scores.insert(scores.end(), positives.begin(), positives.end());
  std::vector<std::uint8_t> labels(negatives.size(), 0);
  labels.resize(scores.size(), 1);
  return Cohort(std::move(name), std::move(scores), std::move(labels));
}

void IngestSchema::check() const {
  if (score_column.empty() || label_column.empty()) {
    throw Error(ErrorKind::InvalidArgument, "column names must be nonempty");
  }
  if (score_column == label_column) {
    throw Error(ErrorKind::InvalidArgument,
                "score and label columns must differ");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_real(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

void strip_bom(std::string& line) {
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
}

Cohort parse_csv(std::istream& source, const IngestSchema& schema,
                 const std::string& name) {
  std::string line;
  bool have_header = false;
  while (std::getline(source, line)) {
    strip_bom(line);
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) {
    throw Error(ErrorKind::EmptyInput, "no header row");
  }
  const auto header = split_commas(line);
  auto find_column = [&](const std::string& column) {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn,
                  "column '" + column + "' not in header");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t score_idx = find_column(schema.score_column);
  const std::size_t label_idx = find_column(schema.label_column);

  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  std::size_t row = 0;
  while (std::getline(source, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split_commas(line);
    const std::string_view label_tok =
        label_idx < fields.size() ? fields[label_idx] : std::string_view{};
    if (label_tok == "0") {
      labels.push_back(0);
    } else if (label_tok == "1") {
      labels.push_back(1);
    } else {
      throw Error(ErrorKind::BadLabel,
                  "expected 0 or 1, got '" + std::string(label_tok) + "'", row);
    }
    const std::string_view score_tok =
        score_idx < fields.size() ? fields[score_idx] : std::string_view{};
    const auto score = parse_real(score_tok);
    if (!score) {
      throw Error(ErrorKind::BadScore,
                  "expected a finite real, got '" + std::string(score_tok) +
                      "'",
                  row);
    }
    scores.push_back(*score);
  }
  if (scores.empty()) throw Error(ErrorKind::EmptyInput, "no data rows");
  return Cohort(name, std::move(scores), std::move(labels));
}

Cohort parse_jsonl(std::istream& source, const IngestSchema& schema,
                   const std::string& name) {
  using nlohmann::json;
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  std::string line;
  std::size_t row = 0;
  while (std::getline(source, line)) {
    if (row == 0) strip_bom(line);
    if (trim(line).empty()) continue;
    ++row;
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("malformed JSON: ") + e.what(), row);
    }
    if (!object.is_object()) {
      throw Error(ErrorKind::InvalidArgument, "row is not a JSON object", row);
    }
    const auto label_it = object.find(schema.label_column);
    if (label_it == object.end()) {
      throw Error(ErrorKind::MissingColumn,
                  "key '" + schema.label_column + "' absent", row);
    }
    const auto score_it = object.find(schema.score_column);
    if (score_it == object.end()) {
      throw Error(ErrorKind::MissingColumn,
                  "key '" + schema.score_column + "' absent", row);
    }
    const json& label = *label_it;
    if (!label.is_number() ||
        (label.get<double>() != 0.0 && label.get<double>() != 1.0)) {
      throw Error(ErrorKind::BadLabel,
                  "expected JSON number 0 or 1, got " + label.dump(), row);
    }
    labels.push_back(label.get<double>() == 1.0 ? 1 : 0);
    const json& score = *score_it;
    if (!score.is_number() || !std::isfinite(score.get<double>())) {
      throw Error(ErrorKind::BadScore,
                  "expected a finite JSON number, got " + score.dump(), row);
    }
    scores.push_back(score.get<double>());
  }
  if (scores.empty()) throw Error(ErrorKind::EmptyInput, "no data rows");
  return Cohort(name, std::move(scores), std::move(labels));
}

}  // namespace

Cohort parse_cohort(std::istream& source, const IngestSchema& schema,
                    const std::string& name) {
  schema.check();
  switch (schema.format) {
    case InputFormat::Csv: return parse_csv(source, schema, name);
    case InputFormat::Jsonl: return parse_jsonl(source, schema, name);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown input format");
}

Cohort parse_cohort_file(const std::filesystem::path& path,
                         const IngestSchema& schema, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoFailure, "cannot open '" + path.string() + "'");
  }
  return parse_cohort(in, schema, name);
}

void write_cohort(std::ostream& sink, const Cohort& cohort,
                  const IngestSchema& schema) {
  schema.check();
  const auto scores = cohort.scores();
  const auto labels = cohort.labels();
  if (schema.format == InputFormat::Csv) {
    sink << schema.label_column << ',' << schema.score_column << '\n';
    for (std::size_t i = 0; i < cohort.size(); ++i) {
      sink << int{labels[i]} << ',' << format_real(scores[i]) << '\n';
    }
    return;
  }
  const std::string label_key = nlohmann::json(schema.label_column).dump();
  const std::string score_key = nlohmann::json(schema.score_column).dump();
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    sink << '{' << label_key << ':' << int{labels[i]} << ',' << score_key
         << ':' << format_real(scores[i]) << "}\n";
  }
}

const Cohort& validate_for_roc(const Cohort& cohort) {
  if (cohort.positive_count() == 0 || cohort.negative_count() == 0) {
    throw Error(ErrorKind::SingleClass,
                "cohort '" + cohort.name() +
                    "' has a single class; ROC/AUROC undefined");
  }
  return cohort;
}

}  // namespace rocaudit
