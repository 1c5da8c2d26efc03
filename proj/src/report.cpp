#include "rocaudit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rocaudit/error.hpp"
#include "rocaudit/numeric.hpp"

namespace rocaudit {

namespace {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string real(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument,
                "report field is not finite: " + format_real(value));
  }
  return format_real(value);
}

// Minimal streaming writer; callers emit keys in the documented order.
class JsonWriter {
 public:
  void begin_object(std::string_view key = {}) { open(key, '{'); }
  void end_object() { close('}'); }
  void begin_array(std::string_view key = {}) { open(key, '['); }
  void end_array() { close(']'); }

  void field(std::string_view key, std::string_view raw) {
    item(key);
    out_ << raw;
  }
  void string(std::string_view key, std::string_view value) {
    field(key, quote(value));
  }
  void number(std::string_view key, double value) { field(key, real(value)); }
  void integer(std::string_view key, std::uint64_t value) {
    field(key, std::to_string(value));
  }
  void boolean(std::string_view key, bool value) {
    field(key, value ? "true" : "false");
  }
  void null(std::string_view key) { field(key, "null"); }

  // Short numeric rows are kept on one line: [a, b, c].
  void row(std::span<const double> values) {
    item({});
    out_ << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ", ";
      out_ << real(values[i]);
    }
    out_ << ']';
  }

  std::string finish() {
    out_ << '\n';
    return out_.str();
  }

 private:
  void item(std::string_view key) {
    if (!first_.empty()) {
      if (!first_.back()) out_ << ',';
      first_.back() = false;
      out_ << '\n' << std::string(2 * first_.size(), ' ');
    }
    if (!key.empty()) out_ << quote(key) << ": ";
  }
  void open(std::string_view key, char bracket) {
    item(key);
    out_ << bracket;
    first_.push_back(true);
  }
  void close(char bracket) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) out_ << '\n' << std::string(2 * first_.size(), ' ');
    out_ << bracket;
  }

  std::ostringstream out_;
  std::vector<bool> first_;
};

std::string_view format_name(InputFormat format) {
  return format == InputFormat::Csv ? "csv" : "jsonl";
}

void write_robustness(JsonWriter& w, std::string_view key,
                      const RobustnessResult& r) {
  w.begin_object(key);
  w.string("kind", kind_name(r.spec.kind));
  w.number("sigma_min", r.spec.sigma_min);
  w.number("sigma_max", r.spec.sigma_max);
  w.integer("grid_points", r.curve.size());
  w.number("baseline_auroc", r.baseline_auroc);
  w.number("raw_integral", r.raw_integral);
  w.number("score", r.score);
  w.number("normalized_score", r.normalized_score);
  w.begin_array("curve");
  for (const auto& p : r.curve) w.row(std::array{p.sigma, p.auroc});
  w.end_array();
  if (!r.mc_curve.empty()) {
    w.integer("mc_draws", r.spec.mc_draws);
    w.integer("mc_seed", r.spec.mc_seed);
    w.begin_array("mc_curve");
    for (std::size_t i = 0; i < r.mc_curve.size(); ++i) {
      w.row(std::array{r.curve[i].sigma, r.mc_curve[i]});
    }
    w.end_array();
  }
  w.end_object();
}

void check_file_name(const std::string& name) {
  const bool ok =
      !name.empty() && name != "." && name != ".." &&
      std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == '-' || c == '.';
      });
  if (!ok) {
    throw Error(ErrorKind::InvalidArgument,
                "cohort name '" + name + "' is not usable in a file name");
  }
}

class ArtifactFile {
 public:
  explicit ArtifactFile(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
      throw Error(ErrorKind::IoFailure, "cannot write '" + path.string() + "'");
    }
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) {
      throw Error(ErrorKind::IoFailure,
                  "failed writing '" + path_.string() + "'");
    }
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Linear ramp: red at the domain minimum, blue at the domain maximum.
std::string ramp_colour(double tau, double lo, double hi) {
  double t = 0.0;
  if (tau == std::numeric_limits<double>::infinity()) {
    t = 1.0;
  } else if (std::isfinite(tau)) {
    t = std::clamp((tau - lo) / (hi - lo), 0.0, 1.0);
  }
  const int red = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  const int blue = static_cast<int>(std::lround(255.0 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x00%02x", red, blue);
  return buf;
}

void write_roc_svg(std::ostream& out, const CohortSection& section,
                   const ThresholdDomain& domain) {
  constexpr double size = 400.0;
  constexpr double margin = 40.0;
  constexpr double span = size - 2 * margin;
  auto x = [&](double fpr) { return format_real(margin + span * fpr); };
  auto y = [&](double tpr) { return format_real(size - margin - span * tpr); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" "
         "height=\"400\" viewBox=\"0 0 400 400\">\n"
      << "  <title>ROC " << section.name << " (AUROC "
      << format_real(section.auroc) << ")</title>\n"
      << "  <metadata>colour-ramp: linear; #ff0000 at tau="
      << format_real(domain.tau_min) << "; #0000ff at tau="
      << format_real(domain.tau_max)
      << "; thresholds outside the range are clamped; segment colour uses the "
         "threshold of its lower end; decision rule "
      << kDecisionRule << "</metadata>\n"
      << "  <rect x=\"40\" y=\"40\" width=\"320\" height=\"320\" "
         "fill=\"none\" stroke=\"#000000\"/>\n"
      << "  <line x1=\"40\" y1=\"360\" x2=\"360\" y2=\"40\" "
         "stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n"
      << "  <text x=\"200\" y=\"390\" text-anchor=\"middle\">FPR</text>\n"
      << "  <text x=\"12\" y=\"200\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 12 200)\">TPR</text>\n";
  const auto& pts = section.roc.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    out << "  <path class=\"roc-segment\" d=\"M " << x(a.fpr) << ' '
        << y(a.tpr) << " L " << x(b.fpr) << ' ' << y(b.tpr)
        << "\" stroke=\"" << ramp_colour(b.threshold, domain.tau_min,
                                         domain.tau_max)
        << "\" stroke-width=\"2\" fill=\"none\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace

Report build_report(const RunConfig& config, std::span<const Cohort> cohorts,
                    std::span<const RobustnessResult> bias,
                    std::span<const RobustnessResult> noise,
                    const std::optional<DriftResult>& drift,
                    const std::optional<WassersteinMatrix>& matrix) {
  if (cohorts.empty() || bias.size() != cohorts.size() ||
      noise.size() != cohorts.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "one bias and one noise result per cohort required");
  }
  if (drift.has_value() != matrix.has_value() ||
      drift.has_value() != (cohorts.size() == 2)) {
    throw Error(ErrorKind::InvalidArgument,
                "drift and distance matrix go with exactly two cohorts");
  }
  std::set<std::string> names;
  Report report;
  report.config = config;
  for (std::size_t i = 0; i < cohorts.size(); ++i) {
    const Cohort& c = cohorts[i];
    if (!names.insert(c.name()).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "duplicate cohort name '" + c.name() + "'");
    }
    CohortSection section;
    section.name = c.name();
    section.negatives = c.negative_count();
    section.positives = c.positive_count();
    section.auroc = auroc(c);
    section.roc = roc_curve(c);
    section.bias = bias[i];
    section.noise = noise[i];
    report.cohorts.push_back(std::move(section));
  }
  if (drift) {
    report.comparison = Comparison{cohorts[0].name(), cohorts[1].name(),
                                   *drift, *matrix, std::nullopt};
  }
  return report;
}

Report evaluate(const RunConfig& config, std::span<const Cohort> cohorts) {
  if (cohorts.size() != 1 && cohorts.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "evaluate takes one or two cohorts");
  }
  std::vector<RobustnessResult> bias;
  std::vector<RobustnessResult> noise;
  for (const Cohort& c : cohorts) {
    validate_for_roc(c);
    bias.push_back(bias_robustness(c, config.bias));
    noise.push_back(noise_robustness(c, config.noise));
  }
  if (cohorts.size() == 1) {
    return build_report(config, cohorts, bias, noise);
  }
  return build_report(config, cohorts, bias, noise,
                      drift_score(cohorts[0], cohorts[1], config.drift),
                      distance_matrix(cohorts[0], cohorts[1]));
}

std::string emit_json(const Report& report) {
  JsonWriter w;
  w.begin_object();
  w.string("schema_version", report.schema_version);
  w.string("decision_rule", report.decision_rule);

  const RunConfig& cfg = report.config;
  w.begin_object("config");
  w.string("score_column", cfg.schema.score_column);
  w.string("label_column", cfg.schema.label_column);
  w.string("format", format_name(cfg.schema.format));
  w.begin_object("bias");
  w.number("sigma_min", cfg.bias.sigma_min);
  w.number("sigma_max", cfg.bias.sigma_max);
  w.integer("grid_points", cfg.bias.grid_points);
  w.end_object();
  w.begin_object("noise");
  w.number("sigma_min", cfg.noise.sigma_min);
  w.number("sigma_max", cfg.noise.sigma_max);
  w.integer("grid_points", cfg.noise.grid_points);
  w.integer("mc_draws", cfg.noise.mc_draws);
  w.integer("seed", cfg.noise.mc_seed);
  w.end_object();
  w.begin_object("drift");
  w.number("tau_min", cfg.drift.domain.tau_min);
  w.number("tau_max", cfg.drift.domain.tau_max);
  w.boolean("allow_out_of_domain", cfg.drift.allow_out_of_domain);
  w.integer("curve_points", cfg.drift.curve_points);
  w.end_object();
  w.end_object();

  w.begin_object("per_cohort");
  for (const auto& c : report.cohorts) {
    w.begin_object(c.name);
    w.integer("n_negative", c.negatives);
    w.integer("n_positive", c.positives);
    w.number("auroc", c.auroc);
    write_robustness(w, "bias", c.bias);
    write_robustness(w, "noise", c.noise);
    w.end_object();
  }
  w.end_object();

  if (report.comparison) {
    const Comparison& cmp = *report.comparison;
    w.begin_object("comparison");
    w.string("validation", cmp.validation);
    w.string("test", cmp.test);
    w.begin_object("drift");
    w.number("tau_min", cmp.drift.domain.tau_min);
    w.number("tau_max", cmp.drift.domain.tau_max);
    w.number("score", cmp.drift.score);
    w.number("sensitivity_score", cmp.drift.sensitivity_score);
    w.number("specificity_score", cmp.drift.specificity_score);
    w.begin_array("segments");
    for (const auto& s : cmp.drift.segments) {
      w.row(std::array{s.tau_lo, s.tau_hi, s.squared_gap});
    }
    w.end_array();
    if (cmp.curve_file) {
      w.string("curve_file", *cmp.curve_file);
    } else {
      w.null("curve_file");
    }
    w.end_object();
    w.begin_object("wasserstein");
    w.begin_array("rows");
    for (auto label : WassersteinMatrix::kRowLabels) w.string({}, label);
    w.end_array();
    w.begin_array("columns");
    for (auto label : WassersteinMatrix::kColumnLabels) w.string({}, label);
    w.end_array();
    w.begin_array("entries");
    for (const auto& r : cmp.wasserstein.entries) w.row(r);
    w.end_array();
    w.end_object();
    w.end_object();
  }
  w.end_object();
  return w.finish();
}

std::vector<std::filesystem::path> emit_plot_data(
    const Report& report, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec || !std::filesystem::is_directory(directory)) {
    throw Error(ErrorKind::IoFailure,
                "cannot create output directory '" + directory.string() + "'");
  }
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& file) {
    written.push_back(directory / file);
    return ArtifactFile(written.back());
  };

  for (const auto& c : report.cohorts) {
    check_file_name(c.name);
    {
      auto f = open("roc_" + c.name + ".csv");
      f.stream() << "tau,fpr,tpr\n";
      for (const auto& p : c.roc.points) {
        f.stream() << format_real(p.threshold) << ',' << format_real(p.fpr)
                   << ',' << format_real(p.tpr) << '\n';
      }
      f.close();
    }
    {
      auto f = open("roc_" + c.name + ".svg");
      write_roc_svg(f.stream(), c, report.config.drift.domain);
      f.close();
    }
    for (const RobustnessResult* r : {&c.bias, &c.noise}) {
      auto f = open("robustness_" + c.name + "_" +
                    std::string(kind_name(r->spec.kind)) + ".csv");
      f.stream() << "sigma,auroc\n";
      for (const auto& p : r->curve) {
        f.stream() << format_real(p.sigma) << ',' << format_real(p.auroc)
                   << '\n';
      }
      f.close();
    }
  }

  if (report.comparison) {
    const Comparison& cmp = *report.comparison;
    {
      auto f = open("drift.csv");
      f.stream() << "tau,sens_v,sens_t,spec_v,spec_t,squared_gap\n";
      for (const auto& p : cmp.drift.curve) {
        f.stream() << format_real(p.tau) << ',' << format_real(p.sens_v) << ','
                   << format_real(p.sens_t) << ',' << format_real(p.spec_v)
                   << ',' << format_real(p.spec_t) << ','
                   << format_real(p.squared_gap) << '\n';
      }
      f.close();
    }
    {
      auto f = open("wasserstein.csv");
      f.stream() << ',' << WassersteinMatrix::kColumnLabels[0] << ','
                 << WassersteinMatrix::kColumnLabels[1] << '\n';
      for (std::size_t r = 0; r < 2; ++r) {
        f.stream() << WassersteinMatrix::kRowLabels[r] << ','
                   << format_real(cmp.wasserstein.entries[r][0]) << ','
                   << format_real(cmp.wasserstein.entries[r][1]) << '\n';
      }
      f.close();
    }
  }
  return written;
}

std::string format_summary(const Report& report) {
  std::ostringstream out;
  char buf[160];
  out << "decision rule: " << report.decision_rule << '\n';
  for (const auto& c : report.cohorts) {
    std::snprintf(buf, sizeof buf,
                  "%-12s n=%zu (neg %zu, pos %zu)  AUROC %.4f  bias %.4f "
                  "(norm %.4f)  noise %.4f (norm %.4f)\n",
                  c.name.c_str(), c.negatives + c.positives, c.negatives,
                  c.positives, c.auroc, c.bias.score,
                  c.bias.normalized_score, c.noise.score,
                  c.noise.normalized_score);
    out << buf;
  }
  if (report.comparison) {
    const auto& cmp = *report.comparison;
    std::snprintf(buf, sizeof buf,
                  "drift %s vs %s: %.6f (sens %.6f, spec %.6f)\n",
                  cmp.validation.c_str(), cmp.test.c_str(), cmp.drift.score,
                  cmp.drift.sensitivity_score, cmp.drift.specificity_score);
    out << buf;
    const auto& e = cmp.wasserstein.entries;
    std::snprintf(buf, sizeof buf,
                  "W2 matrix        %-8s %-8s\n  %-14s %8.4f %8.4f\n"
                  "  %-14s %8.4f %8.4f\n",
                  WassersteinMatrix::kColumnLabels[0].data(),
                  WassersteinMatrix::kColumnLabels[1].data(),
                  WassersteinMatrix::kRowLabels[0].data(), e[0][0], e[0][1],
                  WassersteinMatrix::kRowLabels[1].data(), e[1][0], e[1][1]);
    out << buf;
  }
  return out.str();
}

}  // namespace rocaudit
