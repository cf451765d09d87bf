#include "xmasjump/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace xmasjump {

using nlohmann::ordered_json;

std::string format_rate(double value) { return fmt::format("{:.4f}", value); }

std::string format_coefficient(double value) {
  if (value != 0.0 && std::fabs(value) < 1e-3) return fmt::format("{:.4e}", value);
  return fmt::format("{:.5g}", value);
}

std::string format_p_value(double value) { return fmt::format("{:.3g}", value); }

namespace {

std::string window_label(const YearRange& years) {
  return fmt::format("{}-{:02d}", years.first, ((years.last % 100) + 100) % 100);
}

std::string join_offsets(const std::vector<int>& offsets) {
  return fmt::format("{}", fmt::join(offsets, ","));
}

struct Table {
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void rule() { rows.emplace_back(); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
      if (width.size() < row.size()) width.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    std::string out;
    for (const auto& row : rows) {
      if (row.empty()) {
        out += std::string(total > 2 ? total - 2 : 0, '-') + '\n';
        continue;
      }
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c == 0) {
          line += fmt::format("{:<{}}", row[c], width[c]);
        } else {
          line += fmt::format("  {:>{}}", row[c], width[c]);
        }
      }
      out += line + '\n';
    }
    return out;
  }
};

}  // namespace

std::string render_table(const BacktestReport& report) {
  Table t;
  std::vector<std::string> data{"Data"}, target{"Pred. on"};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    data.push_back(window_label(report.models[i].window_years));
    target.push_back(std::to_string(report.rows[i].target_year));
  }
  t.add(data);
  t.add(target);
  t.rule();

  static constexpr const char* kBetaLabels[] = {"beta0", "beta1", "beta2", "beta3"};
  for (int j = 0; j < 4; ++j) {
    std::vector<std::string> row{kBetaLabels[j]};
    for (std::size_t i = 0; i < report.models.size(); ++i) {
      const auto& c = report.models[i].inference[j];
      std::string cell = format_coefficient(report.models[i].coefficients(j));
      if (i + 1 == report.models.size()) cell += fmt::format(" (p={})", format_p_value(c.p_value));
      row.push_back(std::move(cell));
    }
    t.add(row);
  }
  t.rule();

  std::vector<std::string> adj{"Adj R2"}, pred{"Pred. val"}, real{"Real val"}, lhat{"L^mean est"}, lmean{"L^mean"},
      err{"Error"};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    adj.push_back(fmt::format("{:.2f}", report.models[i].adjusted_r2));
    pred.push_back(format_rate(r.predicted_jump));
    real.push_back(format_rate(r.realized_jump));
    lhat.push_back(format_rate(r.corrected_mean_estimate));
    lmean.push_back(format_rate(r.realized_mean));
    err.push_back(format_rate(r.error));
  }
  t.add(adj);
  t.rule();
  t.add(pred);
  t.add(real);
  t.rule();
  t.add(lhat);
  t.add(lmean);
  t.rule();
  t.add(err);

  return fmt::format("Model: jump ~ beta0 + beta1*a + beta2*b + beta3*a*b  ({}-year window, {}-day pre-window)\n",
                     report.window_len, report.pre_days) +
         t.render();
}

std::string render_observation(const YearObservation& obs) {
  std::string out;
  out += fmt::format("year            {}\n", obs.year);
  out += fmt::format("slope a         {:.6g}\n", obs.slope_a);
  out += fmt::format("intercept b     {}\n", format_rate(obs.intercept_b));
  out += fmt::format("post intercept  {}\n", format_rate(obs.post_intercept));
  out += fmt::format("jump            {}\n", format_rate(obs.jump_delta));
  out += fmt::format("realized mean   {}\n", format_rate(realized_mean(obs)));
  out += fmt::format("pre-window      {} days, offsets {}..{}\n", obs.pre_offsets.size(), obs.pre_offsets.front(),
                     obs.pre_offsets.back());
  out += fmt::format("post-window     offsets {}\n", join_offsets(obs.post_offsets));
  if (obs.pre_warning) out += fmt::format("warning: {}\n", *obs.pre_warning);
  if (obs.post_warning) out += fmt::format("warning: {}\n", *obs.post_warning);
  return out;
}

std::string render_prediction(const Prediction& p, const std::string& model_label) {
  std::string out;
  out += fmt::format("target year     {}\n", p.target_year);
  out += fmt::format("model           {}\n", model_label);
  out += fmt::format("slope a         {:.6g}\n", p.slope_a);
  out += fmt::format("intercept b     {}\n", format_rate(p.intercept_b));
  out += fmt::format("predicted jump  {}\n", format_rate(p.predicted_jump));
  out += fmt::format("trend mean      {}\n", format_rate(p.trend_mean));
  out += fmt::format("corrected mean  {}\n", format_rate(p.corrected_mean_estimate));
  out += fmt::format("post-window     offsets {}\n", join_offsets(p.post_offsets));
  if (p.pre_warning) out += fmt::format("warning: {}\n", *p.pre_warning);
  return out;
}

namespace {

// JSON has no infinities; an exact fit yields infinite t statistics.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const ordered_json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorKind::ParseError, "unexpected string '" + s + "' for a number");
  }
  return j.get<double>();
}

}  // namespace

ordered_json to_json(const CoefficientInference& c) {
  return {{"estimate", number(c.estimate)},
          {"standard_error", number(c.standard_error)},
          {"t_statistic", number(c.t_statistic)},
          {"p_value", number(c.p_value)}};
}

ordered_json to_json(const JumpModel& model) {
  ordered_json inference = ordered_json::array();
  for (const auto& c : model.inference) inference.push_back(to_json(c));
  return {{"window_years", {{"first", model.window_years.first}, {"last", model.window_years.last}}},
          {"coefficients",
           {model.coefficients(0), model.coefficients(1), model.coefficients(2), model.coefficients(3)}},
          {"inference", inference},
          {"adjusted_r2", model.adjusted_r2}};
}

ordered_json to_json(const BacktestRow& row) {
  return {{"target_year", row.target_year},
          {"predicted_jump", row.predicted_jump},
          {"realized_jump", row.realized_jump},
          {"corrected_mean_estimate", row.corrected_mean_estimate},
          {"realized_mean", row.realized_mean},
          {"error", row.error}};
}

ordered_json to_json(const BacktestReport& report) {
  ordered_json models = ordered_json::array();
  ordered_json rows = ordered_json::array();
  for (const auto& m : report.models) models.push_back(to_json(m));
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  return {{"window_len", report.window_len}, {"pre_days", report.pre_days}, {"models", models}, {"rows", rows}};
}

ordered_json to_json(const YearObservation& obs) {
  ordered_json j{{"year", obs.year},
                 {"slope_a", obs.slope_a},
                 {"intercept_b", obs.intercept_b},
                 {"post_intercept", obs.post_intercept},
                 {"jump_delta", obs.jump_delta},
                 {"pre_offsets", obs.pre_offsets},
                 {"post_offsets", obs.post_offsets},
                 {"post_rates", obs.post_rates}};
  j["pre_warning"] = obs.pre_warning ? ordered_json(*obs.pre_warning) : ordered_json(nullptr);
  j["post_warning"] = obs.post_warning ? ordered_json(*obs.post_warning) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const Prediction& p) {
  ordered_json j{{"target_year", p.target_year},
                 {"slope_a", p.slope_a},
                 {"intercept_b", p.intercept_b},
                 {"predicted_jump", p.predicted_jump},
                 {"trend_mean", p.trend_mean},
                 {"corrected_mean_estimate", p.corrected_mean_estimate},
                 {"post_offsets", p.post_offsets}};
  j["pre_warning"] = p.pre_warning ? ordered_json(*p.pre_warning) : ordered_json(nullptr);
  return j;
}

std::string serialize_report(const BacktestReport& report) { return to_json(report).dump(2) + "\n"; }

BacktestReport parse_report(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    BacktestReport report;
    report.window_len = doc.at("window_len").get<int>();
    report.pre_days = doc.at("pre_days").get<int>();
    for (const auto& m : doc.at("models")) {
      JumpModel model;
      model.window_years = {m.at("window_years").at("first").get<int>(), m.at("window_years").at("last").get<int>()};
      const auto& coef = m.at("coefficients");
      for (int j = 0; j < 4; ++j) model.coefficients(j) = coef.at(j).get<double>();
      const auto& inf = m.at("inference");
      for (int j = 0; j < 4; ++j) {
        auto& c = model.inference[j];
        c.estimate = read_number(inf.at(j).at("estimate"));
        c.standard_error = read_number(inf.at(j).at("standard_error"));
        c.t_statistic = read_number(inf.at(j).at("t_statistic"));
        c.p_value = read_number(inf.at(j).at("p_value"));
      }
      model.adjusted_r2 = m.at("adjusted_r2").get<double>();
      report.models.push_back(model);
    }
    for (const auto& r : doc.at("rows")) {
      BacktestRow row;
      row.target_year = r.at("target_year").get<int>();
      row.predicted_jump = r.at("predicted_jump").get<double>();
      row.realized_jump = r.at("realized_jump").get<double>();
      row.corrected_mean_estimate = r.at("corrected_mean_estimate").get<double>();
      row.realized_mean = r.at("realized_mean").get<double>();
      row.error = r.at("error").get<double>();
      report.rows.push_back(row);
    }
    if (report.models.size() != report.rows.size()) {
      throw Error(ErrorKind::ParseError, "models and rows differ in length");
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace xmasjump
