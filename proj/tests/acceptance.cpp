// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
// Criterion 5 needs a real USD 2M LIBOR series (1999-2018) in the CSV format
// of the data loader; point XMASJUMP_LIBOR_DATA at it to run the check.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "xmasjump/jump_pipeline.hpp"
#include "xmasjump/report.hpp"
#include "xmasjump/synthetic.hpp"

#ifndef XMASJUMP_BIN
#error "XMASJUMP_BIN must name the CLI executable"
#endif

using namespace xmasjump;
namespace fs = std::filesystem;

namespace {

enum class Outcome { Pass, Fail, Waived };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

const Coefficients<double> kPlantedBeta(0.005, -9.0, -0.002, 2.0);

SyntheticSpec planted_spec(double noise, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.trend_range = TrendRange{-0.02, 0.02, 0.3, 5.5};
  spec.jump = BilinearJump{kPlantedBeta};
  spec.noise_amplitude = noise;
  spec.seed = seed;
  return spec;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Verdict planted_model_recovery() {
  const auto start = std::chrono::steady_clock::now();
  const auto cal = HolidayCalendar::london_default();
  const YearRange years{2000, 2014};
  const auto spec = planted_spec(0.0, 2024);
  const auto series = generate_synthetic_series(spec, years, cal);

  const auto trends = resolve_trends(spec, years, cal);
  for (std::size_t i = 0; i < trends.size(); ++i) {
    for (std::size_t k = i + 1; k < trends.size(); ++k) {
      if (trends[i].slope == trends[k].slope || trends[i].intercept == trends[k].intercept) {
        return {Outcome::Fail, "trend pairs are not distinct"};
      }
    }
  }

  const auto model = fit_window_model(years, series, cal);
  const double worst = (model.coefficients - kPlantedBeta).cwiseAbs().maxCoeff();
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-9 && model.adjusted_r2 >= 1 - 1e-9 && elapsed < 1.0;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt::format("max |beta - beta*| = {:.3g}, adj R2 = {:.12f}, {:.3f} s", worst, model.adjusted_r2, elapsed)};
}

Verdict mean_difference_identity() {
  const auto start = std::chrono::steady_clock::now();
  const auto cal = HolidayCalendar::london_default();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> year(1990, 2030);
  std::uniform_real_distribution<double> jump(-0.3, 0.3);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    SyntheticSpec spec = planted_spec(0.05, rng());
    spec.jump = FixedJump{jump(rng)};
    const int y = year(rng);
    const auto series = generate_synthetic_series(spec, {y, y}, cal);
    const auto obs = yearly_observation(y, series, cal);
    const double k = static_cast<double>(obs.post_offsets.size());
    double mean_rate = 0.0, mean_trend = 0.0;
    for (std::size_t i = 0; i < obs.post_offsets.size(); ++i) {
      mean_rate += obs.post_rates[i];
      mean_trend += obs.slope_a * obs.post_offsets[i] + obs.intercept_b;
    }
    worst = std::max(worst, std::abs(obs.jump_delta - (mean_rate / k - mean_trend / k)));
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && elapsed < 1.0;
  return {ok ? Outcome::Pass : Outcome::Fail, fmt::format("max deviation {:.3g} over 1000 fixtures, {:.3f} s", worst, elapsed)};
}

double worst_error_identity(const BacktestReport& report) {
  double worst = 0.0;
  for (const auto& r : report.rows) {
    worst = std::max(worst, std::abs((r.predicted_jump - r.realized_jump) - (r.corrected_mean_estimate - r.realized_mean)));
    worst = std::max(worst, std::abs(r.error - (r.corrected_mean_estimate - r.realized_mean)));
  }
  return worst;
}

Verdict error_identity(const char* real_data) {
  const auto cal = HolidayCalendar::london_default();
  double worst = 0.0;
  std::size_t rows = 0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto series = generate_synthetic_series(planted_spec(0.03, seed), {1990, 2020}, cal);
    const auto report = backtest(series, cal, {2005, 2020});
    worst = std::max(worst, worst_error_identity(report));
    rows += report.rows.size();
  }
  std::string source = "synthetic";
  if (real_data) {
    const auto report = backtest(load_rate_series(real_data), cal, {2015, 2018});
    worst = std::max(worst, worst_error_identity(report));
    rows += report.rows.size();
    source += " + real";
  }
  return {worst <= 1e-12 ? Outcome::Pass : Outcome::Fail,
          fmt::format("{} rows ({}), max deviation {:.3g}", rows, source, worst)};
}

Verdict t_distribution_accuracy() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int df = 1; df <= 30; ++df) {
    for (int i = 1; i <= 60; ++i) {
      const double t = 0.1 * i;
      worst = std::max(worst, std::abs(student_t_two_sided_p(t, df) - oracle::t_two_sided_p(t, df)));
    }
  }
  const double critical = student_t_two_sided_p(2.201, 11);
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-8 && std::abs(critical - 0.05) <= 0.0005 && elapsed < 1.0;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt::format("max |p - quadrature| = {:.3g}, p(2.201, 11) = {:.6f}, {:.3f} s", worst, critical, elapsed)};
}

std::string run_cli(const std::vector<std::string>& args, int* status) {
  std::string cmd = XMASJUMP_BIN;
  for (const auto& a : args) cmd += " '" + a + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    *status = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  *status = ::pclose(pipe);
  return out;
}

Verdict table_reproduction(const char* real_data) {
  if (!real_data) {
    return {Outcome::Waived, "no USD 2M LIBOR series supplied (set XMASJUMP_LIBOR_DATA); covered by criteria 1-4 and 6"};
  }
  constexpr double kPred[] = {-0.0709, -0.0306, -0.0548, -0.0180};
  constexpr double kReal[] = {-0.0599, -0.0269, -0.0291, -0.0228};
  constexpr double kError[] = {-0.0110, -0.0037, -0.0257, 0.0048};
  constexpr double kBeta[] = {0.00473, -9.265, -0.00238, 2.016};

  int status = 0;
  const auto out = run_cli({"--data", real_data, "--format", "json-like", "backtest", "--first-target", "2015",
                            "--last-target", "2018"},
                           &status);
  if (status != 0) return {Outcome::Fail, "backtest command failed"};
  const auto report = parse_report(out);
  if (report.rows.size() != 4) return {Outcome::Fail, "expected 4 target years"};

  double worst_abs = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto& r = report.rows[i];
    worst_abs = std::max({worst_abs, std::abs(r.predicted_jump - kPred[i]), std::abs(r.realized_jump - kReal[i]),
                          std::abs(r.error - kError[i])});
  }
  const auto cal = HolidayCalendar::london_default();
  const auto model = fit_window_model({2004, 2018}, load_rate_series(real_data), cal);
  double worst_rel = 0.0;
  for (int j = 0; j < 4; ++j) worst_rel = std::max(worst_rel, std::abs(model.coefficients(j) / kBeta[j] - 1.0));
  const bool ok = worst_abs <= 0.003 && worst_rel <= 0.02;
  return {ok ? Outcome::Pass : Outcome::Fail,
          fmt::format("max row deviation {:.4f} (tol 0.003), max coefficient deviation {:.2f}% (tol 2%)", worst_abs,
                      100 * worst_rel)};
}

Verdict ols_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> len(2, 10);
  std::uniform_real_distribution<double> rate(0.1, 6.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    // Distinct negative offsets, as in a pre-window.
    std::vector<int> pool;
    for (int x = -25; x <= -1; ++x) pool.push_back(x);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> offsets(pool.begin(), pool.begin() + n);
    std::sort(offsets.begin(), offsets.end());

    WindowSample s;
    std::vector<double> xs, ys;
    for (int x : offsets) {
      s.offsets.push_back(x);
      s.rates.push_back(rate(rng));
      xs.push_back(x);
      ys.push_back(s.rates.back());
    }
    const auto fit = fit_simple_ols(s);
    const auto [a, b] = oracle::grid_refine_line(xs, ys);
    worst = std::max({worst, std::abs(fit.slope - a), std::abs(fit.intercept - b)});
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-6 && elapsed < 5.0;
  return {ok ? Outcome::Pass : Outcome::Fail, fmt::format("max |(a,b) - grid| = {:.3g}, {:.3f} s", worst, elapsed)};
}

Verdict determinism() {
  const auto dir = fs::temp_directory_path() / "xmasjump_acceptance";
  fs::create_directories(dir);
  const auto data = (dir / "planted.csv").string();
  {
    std::ofstream f(data, std::ios::binary);
    write_rate_series(f, generate_synthetic_series(planted_spec(0.02, 99), {1995, 2019},
                                                   HolidayCalendar::london_default()));
  }
  const std::vector<std::string> args{"--data", data, "--format", "json-like", "backtest", "--first-target", "2010",
                                      "--last-target", "2019"};
  int s1 = 0, s2 = 0;
  const auto first = run_cli(args, &s1);
  const auto second = run_cli(args, &s2);
  const bool ok = s1 == 0 && s2 == 0 && !first.empty() && first == second;
  return {ok ? Outcome::Pass : Outcome::Fail, fmt::format("{} bytes per run, identical: {}", first.size(), first == second)};
}

}  // namespace

int main() {
  const char* real_data = std::getenv("XMASJUMP_LIBOR_DATA");
  if (real_data && !fs::exists(real_data)) {
    std::cerr << "XMASJUMP_LIBOR_DATA points to a missing file: " << real_data << '\n';
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 planted-model recovery", planted_model_recovery},
      {"2 mean-difference jump identity", mean_difference_identity},
      {"3 backtest error identity", [&] { return error_identity(real_data); }},
      {"4 Student-t accuracy", t_distribution_accuracy},
      {"5 LIBOR table reproduction", [&] { return table_reproduction(real_data); }},
      {"6 OLS vs grid-refinement oracle", ols_oracle_equivalence},
      {"7 backtest output determinism", determinism},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "WAIVED";
    if (v.outcome == Outcome::Fail) ++failures;
    std::cout << fmt::format("{:<6} [{}] {}\n", tag, name, v.detail);
  }
  return failures == 0 ? 0 : 1;
}
