#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xmasjump/market_calendar.hpp"
#include "xmasjump/rate_series.hpp"
#include "xmasjump/regression.hpp"

namespace xmasjump {

struct YearTrend {
  int year = 0;
  double slope = 0.0;      // percent per day
  double intercept = 0.0;  // percent at Dec 25
};

// Uniform draw ranges for years without an explicit trend.
struct TrendRange {
  double slope_min = 0.0;
  double slope_max = 0.0;
  double intercept_min = 0.0;
  double intercept_max = 0.0;
};

struct FixedJump {
  double value = 0.0;
};

struct BilinearJump {
  Coefficients<double> beta = Coefficients<double>::Zero();
};

/// Recipe for a reproducible December fixture.
///
/// For every year the generator emits a rate on each banking day from Nov 25
/// to Dec 31: slope * offset + intercept + noise, plus the planted jump on
/// days after Dec 25. The jump is either a constant or the bilinear rule
/// evaluated at that year's (slope, intercept).
///
/// Randomness comes from std::mt19937_64 seeded with `seed`. Each raw 64-bit
/// output u maps to (u >> 11) * 2^-53 in [0, 1). Draw order, years ascending:
/// slope then intercept (only for years drawn from trend_range), then one
/// noise draw per emitted day in date order, taken even when noise is 0.
/// Noise is noise_amplitude * (2 * uniform - 1).
struct SyntheticSpec {
  std::vector<YearTrend> trends;
  std::optional<TrendRange> trend_range;
  std::variant<FixedJump, BilinearJump> jump = FixedJump{};
  double noise_amplitude = 0.0;
  std::uint64_t seed = 1;
  std::string tenor_label = "SYNTHETIC";
};

/// The uniform mapping used by the generator, exposed for fixture tooling.
class FixtureRandom {
 public:
  explicit FixtureRandom(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

double planted_jump(const SyntheticSpec& spec, double slope, double intercept);

/// Trend used for every year of the range, in year order (explicit entries
/// first, otherwise drawn). Draws consume the same stream as the generator.
std::vector<YearTrend> resolve_trends(const SyntheticSpec& spec, YearRange years, const HolidayCalendar& cal);

DailyRateSeries generate_synthetic_series(const SyntheticSpec& spec, YearRange years, const HolidayCalendar& cal);

struct SyntheticFile {
  SyntheticSpec spec;
  YearRange years;
};

// JSON recipe; see README for the schema.
SyntheticFile parse_synthetic_spec(std::string_view json_text);
SyntheticFile load_synthetic_spec(const std::string& path);

}  // namespace xmasjump
