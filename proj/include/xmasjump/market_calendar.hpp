#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xmasjump/date.hpp"
#include "xmasjump/rate_series.hpp"

namespace xmasjump {

struct MonthDay {
  unsigned month;
  unsigned day;
  auto operator<=>(const MonthDay&) const = default;
};

/// Banking-day calendar: weekend days plus recurring (month-day) and one-off
/// holidays. Dec 25 is always a holiday.
///
/// With weekend substitution enabled, every recurring holiday that falls on a
/// weekend is also observed on the next weekday that is not already a
/// holiday, processed in month-day order (the London convention for
/// Christmas, Boxing Day and New Year's Day).
class HolidayCalendar {
 public:
  HolidayCalendar(std::set<MonthDay> recurring, std::set<Date> dates,
                  std::set<unsigned> weekend_days = {0, 6}, bool weekend_substitution = false);

  /// Weekends, Dec 25, Dec 26 and Jan 1 with weekend substitution.
  static HolidayCalendar london_default();

  bool is_weekend(const Date& date) const;
  bool is_holiday(const Date& date) const;

  const std::set<MonthDay>& recurring() const { return recurring_; }
  const std::set<Date>& dates() const { return dates_; }
  // Weekday encoding as std::chrono::weekday::c_encoding(): 0 = Sunday.
  const std::set<unsigned>& weekend_days() const { return weekend_; }
  bool weekend_substitution() const { return substitution_; }

 private:
  bool is_listed(const Date& date) const;
  std::set<Date> substitutes_for(int year) const;

  std::set<MonthDay> recurring_;
  std::set<Date> dates_;
  std::set<unsigned> weekend_;
  bool substitution_;
};

bool is_banking_day(const Date& date, const HolidayCalendar& cal);

// Override file: one `YYYY-MM-DD` or recurring `--MM-DD` per line, `#` comments.
// The result has Saturday/Sunday weekends, no substitution, and always Dec 25.
HolidayCalendar parse_calendar(std::istream& in);
HolidayCalendar parse_calendar(std::string_view text);
HolidayCalendar load_calendar(const std::filesystem::path& path);

enum class WindowSide { Pre, Post };

/// (offset, rate) pairs relative to Dec 25 of one year, offsets ascending.
struct WindowSample {
  int year = 0;
  std::vector<int> offsets;
  std::vector<double> rates;
  WindowSide side = WindowSide::Pre;
  std::optional<std::string> warning;

  std::size_t size() const { return offsets.size(); }
};

inline constexpr int kDefaultPreDays = 15;
inline constexpr int kExpectedPreSpan = 21;
inline constexpr int kExpectedPostCount = 3;
inline constexpr int kPostFirstOffset = 2;
inline constexpr int kPostLastOffset = 6;

// Last n banking-day fixings strictly before Dec 25. Throws InsufficientData when
// the series starts too late, IncompleteWindow when it ends before Dec 25's last
// preceding banking day, MissingFixing for a gap on a banking day.
WindowSample pre_window(int year, const DailyRateSeries& series, const HolidayCalendar& cal,
                        int n = kDefaultPreDays);

// Banking-day fixings with offsets in [2, 6]; warns when there are not exactly 3.
WindowSample post_window(int year, const DailyRateSeries& series, const HolidayCalendar& cal);

// Banking-day offsets in [2, 6] for `year`, independent of any data.
std::vector<int> post_window_offsets(int year, const HolidayCalendar& cal);

}  // namespace xmasjump
