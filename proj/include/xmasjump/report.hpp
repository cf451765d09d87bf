#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "xmasjump/jump_pipeline.hpp"

namespace xmasjump {

// Display conventions: jumps and mean rates with 4 decimals; coefficients with
// 5 significant digits, scientific below 1e-3 in magnitude.
std::string format_rate(double value);
std::string format_coefficient(double value);
std::string format_p_value(double value);

/// Walk-forward table: one column per target year, coefficient rows with
/// p-values on the final column, adjusted R^2, jumps, means and errors.
std::string render_table(const BacktestReport& report);
std::string render_observation(const YearObservation& obs);
std::string render_prediction(const Prediction& prediction, const std::string& model_label);

nlohmann::ordered_json to_json(const CoefficientInference& c);
nlohmann::ordered_json to_json(const JumpModel& model);
nlohmann::ordered_json to_json(const BacktestRow& row);
nlohmann::ordered_json to_json(const BacktestReport& report);
nlohmann::ordered_json to_json(const YearObservation& obs);
nlohmann::ordered_json to_json(const Prediction& prediction);

// Machine-readable form; dump(2) of to_json with a trailing newline.
std::string serialize_report(const BacktestReport& report);
BacktestReport parse_report(std::string_view text);

}  // namespace xmasjump
