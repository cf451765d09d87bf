#include "xmasjump/jump_pipeline.hpp"

#include <map>
#include <numeric>

#include <fmt/format.h>

namespace xmasjump {

YearObservation yearly_observation(int year, const DailyRateSeries& series, const HolidayCalendar& cal,
                                   int pre_days) {
  const WindowSample pre = pre_window(year, series, cal, pre_days);
  const WindowSample post = post_window(year, series, cal);
  const LineFit<double> trend = fit_simple_ols(pre);

  YearObservation obs;
  obs.year = year;
  obs.slope_a = trend.slope;
  obs.intercept_b = trend.intercept;
  obs.post_intercept = fit_intercept_fixed_slope(post, trend.slope);
  obs.jump_delta = obs.post_intercept - obs.intercept_b;
  obs.pre_offsets = pre.offsets;
  obs.post_offsets = post.offsets;
  obs.post_rates = post.rates;
  obs.pre_warning = pre.warning;
  obs.post_warning = post.warning;
  return obs;
}

JumpModel fit_window_model(const std::vector<YearObservation>& observations) {
  const auto n = static_cast<Eigen::Index>(observations.size());
  if (n < kMinWindowLen) {
    throw Error(ErrorKind::WindowTooShort, fmt::format("{} years (need {})", n, kMinWindowLen));
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (observations[i].year != observations[i - 1].year + 1) {
      throw Error(ErrorKind::InvalidArgument, "window years must be contiguous and ascending");
    }
  }

  Eigen::VectorXd slope(n), intercept(n), jump(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    slope(i) = observations[i].slope_a;
    intercept(i) = observations[i].intercept_b;
    jump(i) = observations[i].jump_delta;
  }
  const auto design = make_bilinear_design(slope, intercept, jump);
  const auto fit = fit_bilinear(design);
  const auto inference = inference_for_fit(design, fit.beta, fit.residual_sum_squares);

  JumpModel model;
  model.window_years = {observations.front().year, observations.back().year};
  model.coefficients = fit.beta;
  model.inference = inference.coefficients;
  model.adjusted_r2 = inference.adjusted_r2;
  return model;
}

JumpModel fit_window_model(YearRange years, const DailyRateSeries& series, const HolidayCalendar& cal,
                           int pre_days) {
  if (years.count() < kMinWindowLen) {
    throw Error(ErrorKind::WindowTooShort, fmt::format("{} years (need {})", years.count(), kMinWindowLen));
  }
  std::vector<YearObservation> observations;
  observations.reserve(years.count());
  for (int y = years.first; y <= years.last; ++y) {
    observations.push_back(yearly_observation(y, series, cal, pre_days));
  }
  return fit_window_model(observations);
}

double trend_mean(double slope_a, double intercept_b, const std::vector<int>& post_offsets) {
  if (post_offsets.empty()) throw Error(ErrorKind::InvalidArgument, "no post-window offsets");
  double sum = 0.0;
  for (int x : post_offsets) sum += slope_a * x + intercept_b;
  return sum / static_cast<double>(post_offsets.size());
}

double predict_mean_rate(const YearObservation& obs, const std::vector<int>& post_offsets, double predicted_jump) {
  return trend_mean(obs.slope_a, obs.intercept_b, post_offsets) + predicted_jump;
}

double realized_mean(const YearObservation& obs) {
  if (obs.post_rates.empty()) throw Error(ErrorKind::InvalidArgument, "no post-window rates");
  return std::accumulate(obs.post_rates.begin(), obs.post_rates.end(), 0.0) /
         static_cast<double>(obs.post_rates.size());
}

BacktestReport backtest(const DailyRateSeries& series, const HolidayCalendar& cal, YearRange targets,
                        int window_len, int pre_days) {
  if (window_len < kMinWindowLen) {
    throw Error(ErrorKind::WindowTooShort, fmt::format("window length {} (need {})", window_len, kMinWindowLen));
  }
  if (targets.count() < 1) throw Error(ErrorKind::InvalidArgument, "empty target range");

  std::map<int, YearObservation> cache;
  const auto observe = [&](int year) -> const YearObservation& {
    auto it = cache.find(year);
    if (it == cache.end()) it = cache.emplace(year, yearly_observation(year, series, cal, pre_days)).first;
    return it->second;
  };

  BacktestReport report;
  report.window_len = window_len;
  report.pre_days = pre_days;
  for (int target = targets.first; target <= targets.last; ++target) {
    std::vector<YearObservation> window;
    window.reserve(window_len);
    for (int y = target - window_len; y < target; ++y) window.push_back(observe(y));
    JumpModel model = fit_window_model(window);

    const YearObservation& obs = observe(target);
    BacktestRow row;
    row.target_year = target;
    row.predicted_jump = predict_jump(model, obs.slope_a, obs.intercept_b);
    row.realized_jump = obs.jump_delta;
    row.corrected_mean_estimate = predict_mean_rate(obs, obs.post_offsets, row.predicted_jump);
    row.realized_mean = realized_mean(obs);
    row.error = row.predicted_jump - row.realized_jump;

    report.models.push_back(std::move(model));
    report.rows.push_back(row);
  }
  return report;
}

Prediction predict_from_trend(int target_year, const HolidayCalendar& cal, const Coefficients<double>& beta,
                              double slope_a, double intercept_b) {
  Prediction p;
  p.target_year = target_year;
  p.slope_a = slope_a;
  p.intercept_b = intercept_b;
  p.predicted_jump = predict_jump(beta, slope_a, intercept_b);
  p.post_offsets = post_window_offsets(target_year, cal);
  p.trend_mean = trend_mean(slope_a, intercept_b, p.post_offsets);
  p.corrected_mean_estimate = p.trend_mean + p.predicted_jump;
  return p;
}

Prediction predict_next(const DailyRateSeries& series, const HolidayCalendar& cal, int target_year,
                        const Coefficients<double>& beta, int pre_days) {
  const WindowSample pre = pre_window(target_year, series, cal, pre_days);
  const LineFit<double> trend = fit_simple_ols(pre);
  Prediction p = predict_from_trend(target_year, cal, beta, trend.slope, trend.intercept);
  p.pre_warning = pre.warning;
  return p;
}

}  // namespace xmasjump
