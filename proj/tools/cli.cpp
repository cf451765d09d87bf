#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "xmasjump/errors.hpp"
#include "xmasjump/jump_pipeline.hpp"
#include "xmasjump/market_calendar.hpp"
#include "xmasjump/rate_series.hpp"
#include "xmasjump/report.hpp"
#include "xmasjump/synthetic.hpp"

namespace xmasjump::cli {

namespace {

struct CliConfig {
  std::string data_path;
  std::string calendar_path;
  int window_len = kDefaultWindowLen;
  int pre_days = kDefaultPreDays;
  std::string format = "table";

  bool json() const { return format == "json-like"; }
};

// Thrown for flag values CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_number_list(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, item));
    }
    values.push_back(v);
  }
  if (values.size() != expected) throw UsageError(fmt::format("{} expects {} comma-separated values", flag, expected));
  return values;
}

YearRange parse_year_range(const std::string& text) {
  int first = 0;
  int last = 0;
  char dash = 0;
  std::istringstream in(text);
  if (!(in >> first >> dash >> last) || dash != '-' || !in.eof() || last < first) {
    throw UsageError(fmt::format("--model-years: expected FIRST-LAST, got '{}'", text));
  }
  return {first, last};
}

HolidayCalendar load_cal(const CliConfig& cfg) {
  return cfg.calendar_path.empty() ? HolidayCalendar::london_default() : load_calendar(cfg.calendar_path);
}

DailyRateSeries load_data(const CliConfig& cfg) {
  if (cfg.data_path.empty()) throw UsageError(fmt::format("--data is required (or set {})", kDataEnvVar));
  if (!std::filesystem::exists(cfg.data_path)) {
    throw Error(ErrorKind::InvalidArgument, "data file '" + cfg.data_path + "' does not exist");
  }
  return load_rate_series(cfg.data_path);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateDesign:
    case ErrorKind::RankDeficient:
    case ErrorKind::TooFewRows:
    case ErrorKind::Singular:
    case ErrorKind::DomainError:
    case ErrorKind::DegenerateVariance:
    case ErrorKind::WindowTooShort:
      return kModelError;
    default:
      return kDataError;
  }
}

// Latest year before `target` whose post-window lies inside the series.
int latest_complete_year(const DailyRateSeries& series, const HolidayCalendar& cal, int target) {
  for (int y = target - 1; y >= year_of(series.first_date()); --y) {
    const auto offsets = post_window_offsets(y, cal);
    if (!offsets.empty() && add_days(christmas(y), offsets.back()) <= series.last_date()) return y;
  }
  throw Error(ErrorKind::InsufficientData, fmt::format("no complete year before {} in the series", target));
}

void cmd_fit_year(const CliConfig& cfg, int year, std::ostream& out) {
  const auto series = load_data(cfg);
  const auto obs = yearly_observation(year, series, load_cal(cfg), cfg.pre_days);
  if (cfg.json()) {
    out << to_json(obs).dump(2) << '\n';
  } else {
    out << render_observation(obs);
  }
}

void cmd_backtest(const CliConfig& cfg, YearRange targets, std::ostream& out) {
  const auto series = load_data(cfg);
  const auto report = backtest(series, load_cal(cfg), targets, cfg.window_len, cfg.pre_days);
  if (cfg.json()) {
    out << serialize_report(report);
  } else {
    out << render_table(report);
  }
}

struct PredictArgs {
  int year = 0;
  std::string model_years;
  std::string coefficients;
  std::string trend;
};

void cmd_predict(const CliConfig& cfg, const PredictArgs& args, std::ostream& out) {
  const auto cal = load_cal(cfg);
  if (!args.model_years.empty() && !args.coefficients.empty()) {
    throw UsageError("--model-years and --coefficients are mutually exclusive");
  }

  std::optional<DailyRateSeries> series;
  if (args.coefficients.empty() || args.trend.empty()) series = load_data(cfg);

  Coefficients<double> beta;
  std::optional<JumpModel> model;
  std::string label;
  if (!args.coefficients.empty()) {
    const auto values = parse_number_list(args.coefficients, 4, "--coefficients");
    beta = Eigen::Map<const Coefficients<double>>(values.data());
    label = "user coefficients";
  } else {
    YearRange years;
    if (!args.model_years.empty()) {
      years = parse_year_range(args.model_years);
    } else {
      const int last = latest_complete_year(*series, cal, args.year);
      years = {last - cfg.window_len + 1, last};
    }
    model = fit_window_model(years, *series, cal, cfg.pre_days);
    beta = model->coefficients;
    label = fmt::format("fit {}-{} (adj R2 {:.4f})", years.first, years.last, model->adjusted_r2);
  }

  Prediction prediction;
  if (!args.trend.empty()) {
    const auto ab = parse_number_list(args.trend, 2, "--trend");
    prediction = predict_from_trend(args.year, cal, beta, ab[0], ab[1]);
  } else {
    prediction = predict_next(*series, cal, args.year, beta, cfg.pre_days);
  }

  if (cfg.json()) {
    nlohmann::ordered_json j = to_json(prediction);
    j["coefficients"] = {beta(0), beta(1), beta(2), beta(3)};
    j["model"] = model ? to_json(*model) : nlohmann::ordered_json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << render_prediction(prediction, label);
  }
}

int cmd_generate(const CliConfig& cfg, const std::string& spec_path, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  const auto file = load_synthetic_spec(spec_path);
  const auto series = generate_synthetic_series(file.spec, file.years, load_cal(cfg));
  const std::string text = format_rate_series(series);
  {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
      err << "error: cannot write '" << out_path << "'\n";
      return kOutputError;
    }
  }
  if (cfg.json()) {
    nlohmann::ordered_json j{{"path", out_path},
                             {"fixings", series.size()},
                             {"first_year", file.years.first},
                             {"last_year", file.years.last}};
    out << j.dump(2) << '\n';
  } else {
    out << fmt::format("wrote {} fixings for {}-{} to {}\n", series.size(), file.years.first, file.years.last,
                       out_path);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect and predict the post-Christmas jump in a daily interest-rate series.", "xmasjump"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(fmt::format(
      "Rates are percent per annum. The data path defaults to ${}.\n"
      "Exit codes: 0 success, 1 internal error, 2 usage error, 3 data or calendar error,\n"
      "4 model fitting error, 5 cannot write output.",
      kDataEnvVar));

  CliConfig cfg;
  app.add_option("--data", cfg.data_path, "Rate series CSV (date,rate)")->envname(kDataEnvVar);
  app.add_option("--calendar", cfg.calendar_path, "Holiday calendar override file")->check(CLI::ExistingFile);
  app.add_option("--window-len", cfg.window_len, "Years per model-fitting window")
      ->check(CLI::Range(kMinWindowLen, 1000));
  app.add_option("--pre-days", cfg.pre_days, "Banking days in the pre-Christmas window")->check(CLI::Range(2, 250));
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json-like"}));

  int fit_year = 0;
  auto* fit = app.add_subcommand("fit-year", "Trend, post-Christmas intercept and jump for one year");
  fit->add_option("--year", fit_year, "Year to analyse")->required();

  int first_target = 0;
  int last_target = 0;
  auto* bt = app.add_subcommand("backtest", "Walk-forward backtest over a range of target years");
  bt->add_option("--first-target", first_target, "First predicted year")->required();
  bt->add_option("--last-target", last_target, "Last predicted year")->required();

  PredictArgs predict_args;
  auto* pr = app.add_subcommand("predict", "Predict the jump for a year from its pre-Christmas window");
  pr->add_option("--year", predict_args.year, "Target year")->required();
  pr->add_option("--model-years", predict_args.model_years, "Fitting window FIRST-LAST, e.g. 2004-2018");
  pr->add_option("--coefficients", predict_args.coefficients, "Use b0,b1,b2,b3 instead of fitting a model");
  pr->add_option("--trend", predict_args.trend, "Use a,b instead of the trend fitted on the data");

  std::string spec_path;
  std::string out_path;
  auto* gen = app.add_subcommand("generate", "Write a deterministic synthetic fixture");
  gen->add_option("--spec", spec_path, "JSON fixture recipe")->required();
  gen->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*fit) {
      cmd_fit_year(cfg, fit_year, out);
    } else if (*bt) {
      if (last_target < first_target) throw UsageError("--last-target precedes --first-target");
      cmd_backtest(cfg, {first_target, last_target}, out);
    } else if (*pr) {
      cmd_predict(cfg, predict_args, out);
    } else if (*gen) {
      return cmd_generate(cfg, spec_path, out_path, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace xmasjump::cli
