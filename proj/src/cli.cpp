#include "rocaudit/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "rocaudit/error.hpp"
#include "rocaudit/report.hpp"

namespace rocaudit::cli {

namespace {

struct Options {
  std::string input;
  std::string name;
  std::string validation;
  std::string test;
  std::string score_col = "score";
  std::string label_col = "label";
  std::string format = "csv";
  std::string bias_range = "0:1";
  std::string noise_range = "0:0.5";
  std::string tau_range = "0:1";
  std::size_t grid = 101;
  std::size_t mc_draws = 0;
  std::uint64_t seed = 0;
  bool allow_out_of_domain = false;
  std::string out;
  std::string plots;
};

struct UsageError {
  std::string message;
};

std::pair<double, double> parse_range(const std::string& flag,
                                      const std::string& text) {
  const auto colon = text.find(':');
  auto number = [&](std::string_view token) {
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
      throw UsageError{flag + " expects LO:HI, got '" + text + "'"};
    }
    return value;
  };
  if (colon == std::string::npos) {
    throw UsageError{flag + " expects LO:HI, got '" + text + "'"};
  }
  const std::string_view view(text);
  return {number(view.substr(0, colon)), number(view.substr(colon + 1))};
}

void add_shared_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--score-col", o.score_col, "Score column / JSON key")
      ->capture_default_str();
  cmd.add_option("--label-col", o.label_col, "Label column / JSON key")
      ->capture_default_str();
  cmd.add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  cmd.add_option("--bias-range", o.bias_range, "Bias sigma range LO:HI")
      ->capture_default_str();
  cmd.add_option("--noise-range", o.noise_range, "Noise sigma range LO:HI")
      ->capture_default_str();
  cmd.add_option("--grid", o.grid,
                 "Sample count for robustness and drift curves")
      ->capture_default_str();
  cmd.add_option("--mc-draws", o.mc_draws,
                 "Monte Carlo draws per noise sigma (0 = off)")
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
  cmd.add_option("--tau-range", o.tau_range, "Drift threshold domain LO:HI")
      ->capture_default_str();
  cmd.add_flag("--allow-out-of-domain", o.allow_out_of_domain,
               "Accept scores outside the drift domain");
  cmd.add_option("--out", o.out, "Report file (default: standard output)");
  cmd.add_option("--plots", o.plots, "Directory for CSV/SVG plot data");
}

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.schema.score_column = o.score_col;
  cfg.schema.label_column = o.label_col;
  cfg.schema.format = o.format == "jsonl" ? InputFormat::Jsonl
                                          : InputFormat::Csv;
  std::tie(cfg.bias.sigma_min, cfg.bias.sigma_max) =
      parse_range("--bias-range", o.bias_range);
  std::tie(cfg.noise.sigma_min, cfg.noise.sigma_max) =
      parse_range("--noise-range", o.noise_range);
  std::tie(cfg.drift.domain.tau_min, cfg.drift.domain.tau_max) =
      parse_range("--tau-range", o.tau_range);
  cfg.bias.grid_points = o.grid;
  cfg.noise.grid_points = o.grid;
  cfg.noise.mc_draws = o.mc_draws;
  cfg.noise.mc_seed = o.seed;
  cfg.drift.curve_points = o.grid;
  cfg.drift.allow_out_of_domain = o.allow_out_of_domain;
  try {
    cfg.schema.check();
    cfg.bias.check();
    cfg.noise.check();
    cfg.drift.domain.check();
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  return cfg;
}

std::string name_from_path(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  for (char& c : stem) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
      c = '_';
    }
  }
  return stem.empty() ? "cohort" : stem;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Audit binary-classifier generalisability from model outputs",
               "rocaudit"};
  app.require_subcommand(1);
  Options o;
  auto* single = app.add_subcommand("single", "Score one cohort");
  single->add_option("--input", o.input, "Prediction file")->required();
  single->add_option("--name", o.name,
                     "Cohort name (default: input file stem)");
  add_shared_options(*single, o);
  auto* compare =
      app.add_subcommand("compare", "Score and compare two cohorts");
  compare->add_option("--validation", o.validation, "Validation predictions")
      ->required();
  compare->add_option("--test", o.test, "Test predictions")->required();
  add_shared_options(*compare, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  RunConfig config;
  try {
    config = make_config(o);
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return kExitUsage;
  }

  try {
    std::vector<Cohort> cohorts;
    if (single->parsed()) {
      cohorts.push_back(parse_cohort_file(
          o.input, config.schema,
          o.name.empty() ? name_from_path(o.input) : o.name));
    } else {
      cohorts.push_back(
          parse_cohort_file(o.validation, config.schema, "validation"));
      cohorts.push_back(parse_cohort_file(o.test, config.schema, "test"));
    }
    Report report = evaluate(config, cohorts);
    if (!o.plots.empty()) {
      if (report.comparison) report.comparison->curve_file = "drift.csv";
      emit_plot_data(report, o.plots);
    }
    const std::string json = emit_json(report);
    if (o.out.empty()) {
      out << json;
    } else {
      std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
      file << json;
      file.close();
      if (!file) throw Error(ErrorKind::IoFailure, "cannot write '" + o.out + "'");
      out << format_summary(report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace rocaudit::cli
