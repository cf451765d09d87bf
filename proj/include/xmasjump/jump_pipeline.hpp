#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xmasjump/market_calendar.hpp"
#include "xmasjump/rate_series.hpp"
#include "xmasjump/regression.hpp"
#include "xmasjump/stat_inference.hpp"

namespace xmasjump {

inline constexpr int kDefaultWindowLen = 15;
inline constexpr int kMinWindowLen = 5;

/// One year's pre-Christmas trend and the post-Christmas intercept shift.
///
/// The trend slope_a * x + intercept_b is fitted on the pre-window. After
/// Christmas the slope is held at slope_a and only the intercept is refitted,
/// giving post_intercept; jump_delta = post_intercept - intercept_b.
struct YearObservation {
  int year = 0;
  double slope_a = 0.0;
  double intercept_b = 0.0;
  double post_intercept = 0.0;
  double jump_delta = 0.0;
  std::vector<int> pre_offsets;
  std::vector<int> post_offsets;
  std::vector<double> post_rates;
  std::optional<std::string> pre_warning;
  std::optional<std::string> post_warning;
};

/// Bilinear jump model fitted on a contiguous run of years.
struct JumpModel {
  YearRange window_years;
  Coefficients<double> coefficients = Coefficients<double>::Zero();
  std::array<CoefficientInference, 4> inference{};
  double adjusted_r2 = 0.0;
};

struct BacktestRow {
  int target_year = 0;
  double predicted_jump = 0.0;
  double realized_jump = 0.0;
  double corrected_mean_estimate = 0.0;  // trend-implied post mean + predicted jump
  double realized_mean = 0.0;
  double error = 0.0;  // predicted_jump - realized_jump
};

struct BacktestReport {
  int window_len = kDefaultWindowLen;
  int pre_days = kDefaultPreDays;
  std::vector<JumpModel> models;  // models[i] predicts rows[i]
  std::vector<BacktestRow> rows;
};

struct Prediction {
  int target_year = 0;
  double slope_a = 0.0;
  double intercept_b = 0.0;
  double predicted_jump = 0.0;
  double trend_mean = 0.0;
  double corrected_mean_estimate = 0.0;
  std::vector<int> post_offsets;
  std::optional<std::string> pre_warning;
};

YearObservation yearly_observation(int year, const DailyRateSeries& series, const HolidayCalendar& cal,
                                   int pre_days = kDefaultPreDays);

JumpModel fit_window_model(YearRange years, const DailyRateSeries& series, const HolidayCalendar& cal,
                           int pre_days = kDefaultPreDays);

// Same fit on precomputed observations (one per year, contiguous, ascending).
JumpModel fit_window_model(const std::vector<YearObservation>& observations);

inline double predict_jump(const Coefficients<double>& beta, double slope_a, double intercept_b) {
  return evaluate_bilinear(beta, slope_a, intercept_b);
}

inline double predict_jump(const JumpModel& model, double slope_a, double intercept_b) {
  return predict_jump(model.coefficients, slope_a, intercept_b);
}

// Mean of slope_a * x + intercept_b over the post-window offsets.
double trend_mean(double slope_a, double intercept_b, const std::vector<int>& post_offsets);

// Trend-implied post-window mean corrected by the predicted jump.
double predict_mean_rate(const YearObservation& obs, const std::vector<int>& post_offsets, double predicted_jump);

double realized_mean(const YearObservation& obs);

/// Walk-forward: for each target year T the model is fitted on
/// [T - window_len, T - 1] and evaluated on T's own pre-window trend.
BacktestReport backtest(const DailyRateSeries& series, const HolidayCalendar& cal, YearRange targets,
                        int window_len = kDefaultWindowLen, int pre_days = kDefaultPreDays);

/// Prediction for a year whose pre-window is complete; the post-window offsets
/// come from the calendar, so no post-Christmas data is needed.
Prediction predict_next(const DailyRateSeries& series, const HolidayCalendar& cal, int target_year,
                        const Coefficients<double>& beta, int pre_days = kDefaultPreDays);

inline Prediction predict_next(const DailyRateSeries& series, const HolidayCalendar& cal, int target_year,
                               const JumpModel& model, int pre_days = kDefaultPreDays) {
  return predict_next(series, cal, target_year, model.coefficients, pre_days);
}

// Prediction from a trend supplied by hand.
Prediction predict_from_trend(int target_year, const HolidayCalendar& cal, const Coefficients<double>& beta,
                              double slope_a, double intercept_b);

}  // namespace xmasjump
