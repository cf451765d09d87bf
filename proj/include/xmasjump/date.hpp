#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace xmasjump {

// Naive calendar date; no time zone.
using Date = std::chrono::year_month_day;

// Inclusive range of calendar years.
struct YearRange {
  int first = 0;
  int last = 0;

  int count() const { return last - first + 1; }
  bool operator==(const YearRange&) const = default;
};

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline Date christmas(int year) { return make_date(year, 12, 25); }

inline Date add_days(const Date& date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

// Signed whole days from Dec 25 of `year` to `date`.
inline int day_offset(const Date& date, int year) {
  return static_cast<int>((std::chrono::sys_days{date} - std::chrono::sys_days{christmas(year)}).count());
}

inline int year_of(const Date& date) { return static_cast<int>(date.year()); }

/// Strict YYYY-MM-DD; returns nullopt for anything else, including impossible dates.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso(const Date& date);

}  // namespace xmasjump
