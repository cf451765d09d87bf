#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmasjump/date.hpp"

namespace xmasjump {

struct Fixing {
  Date date;
  double rate;  // percent per annum, 2.70 means 2.70%
};

/// Date-ordered daily fixings of one tenor. Dates are unique and rates finite;
/// the constructor sorts its input and rejects anything else.
class DailyRateSeries {
 public:
  DailyRateSeries() = default;
  explicit DailyRateSeries(std::vector<Fixing> entries, std::string tenor_label = {});

  std::span<const Fixing> entries() const { return entries_; }
  const std::string& tenor_label() const { return tenor_label_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Date& first_date() const { return entries_.front().date; }
  const Date& last_date() const { return entries_.back().date; }

  std::optional<double> rate_on(const Date& date) const;

  friend bool operator==(const DailyRateSeries&, const DailyRateSeries&);

 private:
  std::vector<Fixing> entries_;
  std::string tenor_label_;
};

inline bool operator==(const Fixing& lhs, const Fixing& rhs) {
  return lhs.date == rhs.date && lhs.rate == rhs.rate;
}

// CSV with header `date,rate`, one `YYYY-MM-DD,<decimal>` row per line.
// Blank lines and `#` comments are skipped; a `# tenor: <label>` comment sets
// the tenor label.
DailyRateSeries parse_rate_series(std::istream& in);
DailyRateSeries parse_rate_series(std::string_view text);
DailyRateSeries load_rate_series(const std::filesystem::path& path);

// Shortest round-trip decimal representation, so parse(write(s)) == s.
void write_rate_series(std::ostream& out, const DailyRateSeries& series);
std::string format_rate_series(const DailyRateSeries& series);

}  // namespace xmasjump
