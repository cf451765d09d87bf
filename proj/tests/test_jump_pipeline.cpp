#include <random>

#include "doctest.h"
#include "xmasjump/jump_pipeline.hpp"
#include "xmasjump/report.hpp"
#include "xmasjump/synthetic.hpp"

using namespace xmasjump;

namespace {

// Exactly linear rates from Dec 4 through Dec 31 (plus November padding),
// with `jump` added after Christmas.
DailyRateSeries linear_year(int year, double slope, double intercept, double jump, const HolidayCalendar& cal) {
  std::vector<Fixing> f;
  for (Date d = make_date(year, 11, 1); d <= make_date(year, 12, 31); d = add_days(d, 1)) {
    if (!is_banking_day(d, cal)) continue;
    const int x = day_offset(d, year);
    f.push_back({d, slope * x + intercept + (x > 0 ? jump : 0.0)});
  }
  return DailyRateSeries(std::move(f));
}

DailyRateSeries shifted(const DailyRateSeries& s, double c) {
  std::vector<Fixing> f(s.entries().begin(), s.entries().end());
  for (auto& e : f) e.rate += c;
  return DailyRateSeries(std::move(f), s.tenor_label());
}

SyntheticSpec planted_spec(double noise, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.trend_range = TrendRange{-0.02, 0.02, 0.3, 5.5};
  spec.jump = BilinearJump{Coefficients<double>(0.005, -9.0, -0.002, 2.0)};
  spec.noise_amplitude = noise;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("yearly_observation") {
  const auto cal = HolidayCalendar::london_default();

  SUBCASE("unbroken line has no jump") {
    const auto obs = yearly_observation(2018, linear_year(2018, 0.004, 2.3, 0.0, cal), cal);
    CHECK(obs.slope_a == doctest::Approx(0.004).epsilon(1e-12));
    CHECK(obs.intercept_b == doctest::Approx(2.3).epsilon(1e-12));
    CHECK(std::abs(obs.jump_delta) < 1e-12);
    CHECK(obs.post_offsets == std::vector<int>{2, 3, 6});
    CHECK(obs.pre_offsets.size() == 15);
    CHECK_FALSE(obs.pre_warning.has_value());
    CHECK_FALSE(obs.post_warning.has_value());
  }

  SUBCASE("planted jump") {
    const auto obs = yearly_observation(2018, linear_year(2018, -0.01, 1.7, 0.25, cal), cal);
    CHECK(std::abs(obs.jump_delta - 0.25) < 1e-12);
    CHECK(obs.jump_delta == obs.post_intercept - obs.intercept_b);
  }

  SUBCASE("mean-difference identity and level-shift covariance") {
    const auto series = generate_synthetic_series(planted_spec(0.05, 3), {1995, 2020}, cal);
    for (int y = 1995; y <= 2020; ++y) {
      const auto obs = yearly_observation(y, series, cal);
      const double k = static_cast<double>(obs.post_offsets.size());
      double mean_y = 0, mean_fit = 0;
      for (std::size_t i = 0; i < obs.post_offsets.size(); ++i) {
        mean_y += obs.post_rates[i] / k;
        mean_fit += (obs.slope_a * obs.post_offsets[i] + obs.intercept_b) / k;
      }
      CHECK(std::abs(obs.jump_delta - (mean_y - mean_fit)) < 1e-12);

      const auto moved = yearly_observation(y, shifted(series, 1.25), cal);
      CHECK(std::abs(moved.jump_delta - obs.jump_delta) < 1e-12);
      CHECK(std::abs(moved.intercept_b - obs.intercept_b - 1.25) < 1e-12);
      CHECK(std::abs(moved.slope_a - obs.slope_a) < 1e-12);
    }
  }
}

TEST_CASE("fit_window_model") {
  const auto cal = HolidayCalendar::london_default();
  const Coefficients<double> beta(0.005, -9.0, -0.002, 2.0);
  const auto series = generate_synthetic_series(planted_spec(0.0, 1), {1990, 2020}, cal);

  const auto model = fit_window_model({2000, 2014}, series, cal);
  CHECK(model.window_years == YearRange{2000, 2014});
  CHECK((model.coefficients - beta).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(model.adjusted_r2 >= 1 - 1e-9);

  CHECK_THROWS_WITH_AS(fit_window_model({2000, 2003}, series, cal), doctest::Contains("WindowTooShort"), Error);
  CHECK_THROWS_AS(fit_window_model({1980, 1994}, series, cal), Error);

  SUBCASE("constant jump has no variance to explain") {
    std::vector<YearObservation> obs;
    for (int y = 2000; y <= 2010; ++y) {
      YearObservation o;
      o.year = y;
      o.slope_a = 0.001 * (y - 2005) + 0.0003 * (y % 3);
      o.intercept_b = 1.0 + 0.1 * ((y * 7) % 11);
      o.jump_delta = 0.1;
      obs.push_back(o);
    }
    CHECK_THROWS_WITH_AS(fit_window_model(obs), doctest::Contains("DegenerateVariance"), Error);
    obs[4].year = 2099;
    CHECK_THROWS_AS(fit_window_model(obs), Error);
  }
}

TEST_CASE("predict_jump") {
  JumpModel published;
  published.coefficients = Coefficients<double>(0.0048, -9.2646, -0.0024, 2.0161);
  CHECK(predict_jump(published, 0.0, 0.0) == doctest::Approx(0.0048));
  CHECK(predict_jump(published, 0.0, 1.0) == doctest::Approx(0.0024));
  CHECK(predict_jump(published, 0.01, 2.0) ==
        doctest::Approx(0.0048 - 0.092646 - 0.0048 + 2.0161 * 0.02));

  JumpModel other;
  other.coefficients = Coefficients<double>(-1.5, 3, 4, 5);
  CHECK(predict_jump(other, 0.0, 0.0) == -1.5);
}

TEST_CASE("predict_mean_rate") {
  YearObservation flat;
  flat.slope_a = 0.0;
  flat.intercept_b = 1.0;
  CHECK(predict_mean_rate(flat, {2, 3, 6}, 0.0) == doctest::Approx(1.0));

  YearObservation trending;
  trending.slope_a = 0.01;
  trending.intercept_b = 1.0;
  CHECK(predict_mean_rate(trending, {2, 3, 6}, 0.05) == doctest::Approx(1.0 + 0.01 * 11.0 / 3.0 + 0.05));
  CHECK(predict_mean_rate(trending, {2, 3, 6}, 0.05) == doctest::Approx(1.08667).epsilon(1e-5));
  CHECK_THROWS_AS(predict_mean_rate(trending, {}, 0.0), Error);
}

TEST_CASE("backtest") {
  const auto cal = HolidayCalendar::london_default();

  SUBCASE("exact planted model predicts every jump") {
    const auto series = generate_synthetic_series(planted_spec(0.0, 4), {1995, 2020}, cal);
    const auto report = backtest(series, cal, {2015, 2018});
    REQUIRE(report.rows.size() == 4);
    REQUIRE(report.models.size() == 4);
    CHECK(report.models[0].window_years == YearRange{2000, 2014});
    CHECK(report.models[3].window_years == YearRange{2003, 2017});
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      CHECK(r.target_year == 2015 + static_cast<int>(i));
      CHECK(std::abs(r.error) < 1e-9);
      CHECK(report.models[i].window_years.last < r.target_year);
      CHECK(report.models[i].window_years.count() == 15);
    }
  }

  SUBCASE("error identity with noise") {
    const auto series = generate_synthetic_series(planted_spec(0.02, 8), {1990, 2020}, cal);
    const auto report = backtest(series, cal, {2005, 2020}, 10);
    for (const auto& r : report.rows) {
      CHECK(r.error == r.predicted_jump - r.realized_jump);
      CHECK(std::abs(r.error - (r.corrected_mean_estimate - r.realized_mean)) < 1e-12);
    }
    const auto again = backtest(series, cal, {2005, 2020}, 10);
    CHECK(serialize_report(report) == serialize_report(again));
  }

  SUBCASE("errors") {
    const auto series = generate_synthetic_series(planted_spec(0.0, 4), {2000, 2018}, cal);
    CHECK_THROWS_AS(backtest(series, cal, {2015, 2019}), Error);
    CHECK_THROWS_AS(backtest(series, cal, {2015, 2018}, 4), Error);
  }
}

TEST_CASE("predict_next") {
  const auto cal = HolidayCalendar::london_default();
  const Coefficients<double> beta(0.005, -9.0, -0.002, 2.0);

  SUBCASE("planted target year") {
    SyntheticSpec spec = planted_spec(0.0, 2);
    const auto series = generate_synthetic_series(spec, {1995, 2019}, cal);
    const auto trends = resolve_trends(spec, {1995, 2019}, cal);
    const auto model = fit_window_model({2004, 2018}, series, cal);
    const auto p = predict_next(series, cal, 2019, model);
    const auto& t2019 = trends.back();
    CHECK(p.slope_a == doctest::Approx(t2019.slope).epsilon(1e-12));
    CHECK(std::abs(p.predicted_jump - evaluate_bilinear(beta, t2019.slope, t2019.intercept)) < 1e-9);
    CHECK(p.post_offsets == post_window_offsets(2019, cal));
  }

  SUBCASE("only the pre-window is needed") {
    const auto full = linear_year(2019, 0.0, 0.0, 0.0, cal);
    std::vector<Fixing> f;
    for (auto e : full.entries()) {
      if (e.date <= make_date(2019, 12, 24)) f.push_back(e);
    }
    const auto p = predict_next(DailyRateSeries(f), cal, 2019, Coefficients<double>(0.0048, -9.2646, -0.0024, 2.0161));
    CHECK(p.predicted_jump == doctest::Approx(0.0048));
    CHECK(p.corrected_mean_estimate == doctest::Approx(0.0048));
  }

  SUBCASE("truncated series") {
    const auto full = linear_year(2019, 0.001, 1.9, 0.0, cal);
    std::vector<Fixing> f;
    for (auto e : full.entries()) {
      if (e.date <= make_date(2019, 12, 10)) f.push_back(e);
    }
    try {
      predict_next(DailyRateSeries(f), cal, 2019, beta);
      FAIL("expected IncompleteWindow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IncompleteWindow);
    }
  }
}
