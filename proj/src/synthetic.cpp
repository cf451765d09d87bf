#include "xmasjump/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace xmasjump {

namespace {

constexpr unsigned kFirstMonth = 11;
constexpr unsigned kFirstDay = 25;

DailyRateSeries generate(const SyntheticSpec& spec, YearRange years, const HolidayCalendar& cal,
                         std::vector<YearTrend>* trends_out) {
  if (years.count() < 1) throw Error(ErrorKind::InvalidArgument, "empty year range");
  if (!(spec.noise_amplitude >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise amplitude must be >= 0");

  std::map<int, YearTrend> explicit_trends;
  for (const auto& t : spec.trends) explicit_trends[t.year] = t;

  FixtureRandom rng(spec.seed);
  std::vector<Fixing> fixings;
  for (int year = years.first; year <= years.last; ++year) {
    YearTrend trend;
    if (auto it = explicit_trends.find(year); it != explicit_trends.end()) {
      trend = it->second;
    } else if (spec.trend_range) {
      const auto& r = *spec.trend_range;
      trend.year = year;
      trend.slope = rng.uniform(r.slope_min, r.slope_max);
      trend.intercept = rng.uniform(r.intercept_min, r.intercept_max);
    } else {
      throw Error(ErrorKind::InvalidArgument, fmt::format("no trend for {} and no trend_range", year));
    }
    if (trends_out) trends_out->push_back(trend);

    const double jump = planted_jump(spec, trend.slope, trend.intercept);
    const Date last = make_date(year, 12, 31);
    for (Date day = make_date(year, kFirstMonth, kFirstDay); day <= last; day = add_days(day, 1)) {
      if (!is_banking_day(day, cal)) continue;
      const int x = day_offset(day, year);
      const double noise = spec.noise_amplitude * (2.0 * rng.uniform() - 1.0);
      double rate = trend.slope * x + trend.intercept + noise;
      if (x > 0) rate += jump;
      fixings.push_back({day, rate});
    }
  }
  return DailyRateSeries(std::move(fixings), spec.tenor_label);
}

std::pair<double, double> read_range(const nlohmann::json& node, const char* key) {
  const auto& r = node.at(key);
  if (!r.is_array() || r.size() != 2) throw Error(ErrorKind::ParseError, fmt::format("'{}' must be [min, max]", key));
  return {r[0].get<double>(), r[1].get<double>()};
}

}  // namespace

double planted_jump(const SyntheticSpec& spec, double slope, double intercept) {
  if (const auto* fixed = std::get_if<FixedJump>(&spec.jump)) return fixed->value;
  return evaluate_bilinear(std::get<BilinearJump>(spec.jump).beta, slope, intercept);
}

std::vector<YearTrend> resolve_trends(const SyntheticSpec& spec, YearRange years, const HolidayCalendar& cal) {
  std::vector<YearTrend> trends;
  generate(spec, years, cal, &trends);
  return trends;
}

DailyRateSeries generate_synthetic_series(const SyntheticSpec& spec, YearRange years, const HolidayCalendar& cal) {
  return generate(spec, years, cal, nullptr);
}

SyntheticFile parse_synthetic_spec(std::string_view json_text) {
  SyntheticFile out;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    auto& spec = out.spec;
    out.years.first = doc.at("first_year").get<int>();
    out.years.last = doc.at("last_year").get<int>();
    if (out.years.count() < 1) throw Error(ErrorKind::ParseError, "last_year precedes first_year");
    spec.seed = doc.value("seed", std::uint64_t{1});
    spec.noise_amplitude = doc.value("noise", 0.0);
    if (spec.noise_amplitude < 0.0) throw Error(ErrorKind::ParseError, "noise must be >= 0");
    spec.tenor_label = doc.value("tenor", std::string("SYNTHETIC"));

    if (doc.contains("trend_range")) {
      const auto& node = doc.at("trend_range");
      auto [smin, smax] = read_range(node, "slope");
      auto [imin, imax] = read_range(node, "intercept");
      spec.trend_range = TrendRange{smin, smax, imin, imax};
    }
    if (doc.contains("trends")) {
      for (const auto& t : doc.at("trends")) {
        spec.trends.push_back({t.at("year").get<int>(), t.at("slope").get<double>(), t.at("intercept").get<double>()});
      }
    }
    if (doc.contains("jump")) {
      const auto& jump = doc.at("jump");
      if (jump.contains("fixed")) {
        spec.jump = FixedJump{jump.at("fixed").get<double>()};
      } else if (jump.contains("bilinear")) {
        const auto& b = jump.at("bilinear");
        if (!b.is_array() || b.size() != 4) throw Error(ErrorKind::ParseError, "'bilinear' needs 4 coefficients");
        BilinearJump rule;
        for (int j = 0; j < 4; ++j) rule.beta(j) = b[j].get<double>();
        spec.jump = rule;
      } else {
        throw Error(ErrorKind::ParseError, "'jump' needs 'fixed' or 'bilinear'");
      }
    }
    if (!spec.trend_range) {
      for (int y = out.years.first; y <= out.years.last; ++y) {
        if (std::none_of(spec.trends.begin(), spec.trends.end(), [y](const YearTrend& t) { return t.year == y; })) {
          throw Error(ErrorKind::ParseError, fmt::format("no trend for {} and no trend_range", y));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return out;
}

SyntheticFile load_synthetic_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open spec file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_synthetic_spec(text.str());
}

}  // namespace xmasjump
