#include "xmasjump/market_calendar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "xmasjump/errors.hpp"

namespace xmasjump {

namespace {

constexpr MonthDay kChristmas{12, 25};

bool valid_month_day(const MonthDay& md) {
  // Leap year so that --02-29 is accepted.
  return Date{std::chrono::year{2000}, std::chrono::month{md.month}, std::chrono::day{md.day}}.ok();
}

}  // namespace

HolidayCalendar::HolidayCalendar(std::set<MonthDay> recurring, std::set<Date> dates,
                                 std::set<unsigned> weekend_days, bool weekend_substitution)
    : recurring_(std::move(recurring)),
      dates_(std::move(dates)),
      weekend_(std::move(weekend_days)),
      substitution_(weekend_substitution) {
  recurring_.insert(kChristmas);
  for (const auto& md : recurring_) {
    if (!valid_month_day(md)) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("invalid month-day --{:02d}-{:02d}", md.month, md.day));
    }
  }
  for (const auto& d : dates_) {
    if (!d.ok()) throw Error(ErrorKind::InvalidArgument, "invalid holiday date");
  }
  for (unsigned wd : weekend_) {
    if (wd > 6) throw Error(ErrorKind::InvalidArgument, "weekday encoding must be 0..6");
  }
  if (weekend_.size() == 7) throw Error(ErrorKind::InvalidArgument, "every weekday is a weekend day");
}

HolidayCalendar HolidayCalendar::london_default() {
  return HolidayCalendar({{1, 1}, {12, 25}, {12, 26}}, {}, {0, 6}, true);
}

bool HolidayCalendar::is_weekend(const Date& date) const {
  return weekend_.contains(std::chrono::weekday{std::chrono::sys_days{date}}.c_encoding());
}

bool HolidayCalendar::is_listed(const Date& date) const {
  return dates_.contains(date) ||
         recurring_.contains({static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day())});
}

std::set<Date> HolidayCalendar::substitutes_for(int year) const {
  std::set<Date> taken;
  for (const auto& md : recurring_) {
    Date d{std::chrono::year{year}, std::chrono::month{md.month}, std::chrono::day{md.day}};
    if (!d.ok() || !is_weekend(d)) continue;
    Date sub = add_days(d, 1);
    while (is_weekend(sub) || is_listed(sub) || taken.contains(sub)) sub = add_days(sub, 1);
    taken.insert(sub);
  }
  return taken;
}

bool HolidayCalendar::is_holiday(const Date& date) const {
  if (is_listed(date)) return true;
  if (!substitution_) return false;
  // A substitute can spill into January from the previous year.
  const int y = year_of(date);
  return substitutes_for(y).contains(date) || substitutes_for(y - 1).contains(date);
}

bool is_banking_day(const Date& date, const HolidayCalendar& cal) {
  return !cal.is_weekend(date) && !cal.is_holiday(date);
}

HolidayCalendar parse_calendar(std::istream& in) {
  std::set<MonthDay> recurring;
  std::set<Date> dates;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) continue;

    bool inserted = false;
    if (line.starts_with("--")) {
      auto d = line.size() == 7 ? parse_iso_date(fmt::format("2000-{}", line.substr(2))) : std::nullopt;
      if (!d) throw ParseError(line_no, "invalid recurring month-day '" + std::string(line) + "'");
      inserted = recurring.insert({static_cast<unsigned>(d->month()), static_cast<unsigned>(d->day())}).second;
    } else {
      auto d = parse_iso_date(line);
      if (!d) throw ParseError(line_no, "invalid date '" + std::string(line) + "'");
      inserted = dates.insert(*d).second;
    }
    if (!inserted) throw ParseError(line_no, "duplicate entry '" + std::string(line) + "'");
  }
  return HolidayCalendar(std::move(recurring), std::move(dates));
}

HolidayCalendar parse_calendar(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_calendar(in);
}

HolidayCalendar load_calendar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open calendar file '" + path.string() + "'");
  return parse_calendar(in);
}

WindowSample pre_window(int year, const DailyRateSeries& series, const HolidayCalendar& cal, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "pre-window needs at least 2 days");
  if (series.empty()) throw Error(ErrorKind::InsufficientData, fmt::format("empty series for {}", year));

  WindowSample sample;
  sample.year = year;
  sample.side = WindowSide::Pre;
  sample.offsets.reserve(n);
  sample.rates.reserve(n);

  Date day = add_days(christmas(year), -1);
  while (static_cast<int>(sample.offsets.size()) < n) {
    if (is_banking_day(day, cal)) {
      if (day > series.last_date()) {
        throw Error(ErrorKind::IncompleteWindow,
                    fmt::format("pre-window {} needs {} but the series ends {}", year, format_iso(day),
                                format_iso(series.last_date())));
      }
      if (day < series.first_date()) {
        throw Error(ErrorKind::InsufficientData,
                    fmt::format("pre-window {} has {} of {} fixings before the series starts {}", year,
                                sample.offsets.size(), n, format_iso(series.first_date())));
      }
      auto rate = series.rate_on(day);
      if (!rate) throw Error(ErrorKind::MissingFixing, format_iso(day));
      sample.offsets.push_back(day_offset(day, year));
      sample.rates.push_back(*rate);
    }
    day = add_days(day, -1);
  }
  std::reverse(sample.offsets.begin(), sample.offsets.end());
  std::reverse(sample.rates.begin(), sample.rates.end());

  const int span = -sample.offsets.front();
  if (span != kExpectedPreSpan) {
    sample.warning = fmt::format("pre-window spans {} calendar days (expected {})", span, kExpectedPreSpan);
  }
  return sample;
}

std::vector<int> post_window_offsets(int year, const HolidayCalendar& cal) {
  std::vector<int> offsets;
  for (int off = kPostFirstOffset; off <= kPostLastOffset; ++off) {
    if (is_banking_day(add_days(christmas(year), off), cal)) offsets.push_back(off);
  }
  return offsets;
}

WindowSample post_window(int year, const DailyRateSeries& series, const HolidayCalendar& cal) {
  WindowSample sample;
  sample.year = year;
  sample.side = WindowSide::Post;

  const auto offsets = post_window_offsets(year, cal);
  if (offsets.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("post-window {} has {} banking days", year, offsets.size()));
  }
  for (int off : offsets) {
    const Date day = add_days(christmas(year), off);
    if (series.empty() || day > series.last_date() || day < series.first_date()) {
      throw Error(ErrorKind::InsufficientData,
                  fmt::format("post-window {} needs {} outside the series", year, format_iso(day)));
    }
    auto rate = series.rate_on(day);
    if (!rate) throw Error(ErrorKind::MissingFixing, format_iso(day));
    sample.offsets.push_back(off);
    sample.rates.push_back(*rate);
  }
  if (static_cast<int>(sample.size()) != kExpectedPostCount) {
    sample.warning = fmt::format("post-window has {} banking days (expected {})", sample.size(),
                                 kExpectedPostCount);
  }
  return sample;
}

}  // namespace xmasjump
