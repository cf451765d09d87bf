#include "xmasjump/rate_series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "xmasjump/errors.hpp"

namespace xmasjump {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                   std::chars_format::general);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

DailyRateSeries::DailyRateSeries(std::vector<Fixing> entries, std::string tenor_label)
    : entries_(std::move(entries)), tenor_label_(std::move(tenor_label)) {
  for (const auto& f : entries_) {
    if (!f.date.ok()) throw Error(ErrorKind::InvalidArgument, "invalid fixing date");
    if (!std::isfinite(f.rate)) {
      throw Error(ErrorKind::InvalidArgument, "non-finite rate on " + format_iso(f.date));
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Fixing& a, const Fixing& b) { return a.date < b.date; });
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                [](const Fixing& a, const Fixing& b) { return a.date == b.date; });
  if (dup != entries_.end()) throw Error(ErrorKind::DuplicateDate, format_iso(dup->date));
}

std::optional<double> DailyRateSeries::rate_on(const Date& date) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), date,
                             [](const Fixing& f, const Date& d) { return f.date < d; });
  if (it == entries_.end() || it->date != date) return std::nullopt;
  return it->rate;
}

bool operator==(const DailyRateSeries& lhs, const DailyRateSeries& rhs) {
  return lhs.tenor_label_ == rhs.tenor_label_ && lhs.entries_ == rhs.entries_;
}

DailyRateSeries parse_rate_series(std::istream& in) {
  constexpr std::string_view kTenorTag = "tenor:";
  std::vector<Fixing> entries;
  std::string tenor;
  bool seen_header = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with(kTenorTag)) tenor = std::string(trim(body.substr(kTenorTag.size())));
      continue;
    }
    if (!seen_header) {
      if (line != "date,rate") throw ParseError(line_no, "expected header 'date,rate'");
      seen_header = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected two comma-separated fields");
    }
    auto date_text = trim(line.substr(0, comma));
    auto rate_text = trim(line.substr(comma + 1));
    auto date = parse_iso_date(date_text);
    if (!date) throw ParseError(line_no, "invalid date '" + std::string(date_text) + "'");
    auto rate = parse_decimal(rate_text);
    if (!rate) throw ParseError(line_no, "invalid rate '" + std::string(rate_text) + "'");
    entries.push_back({*date, *rate});
  }
  if (!seen_header) throw ParseError(line_no, "missing header 'date,rate'");
  return DailyRateSeries(std::move(entries), std::move(tenor));
}

DailyRateSeries parse_rate_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_rate_series(in);
}

DailyRateSeries load_rate_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open data file '" + path.string() + "'");
  return parse_rate_series(in);
}

void write_rate_series(std::ostream& out, const DailyRateSeries& series) {
  if (!series.tenor_label().empty()) out << "# tenor: " << series.tenor_label() << '\n';
  out << "date,rate\n";
  char buf[64];
  for (const auto& f : series.entries()) {
    auto res = std::to_chars(buf, buf + sizeof buf, f.rate);
    out << format_iso(f.date) << ',' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

std::string format_rate_series(const DailyRateSeries& series) {
  std::ostringstream out;
  write_rate_series(out, series);
  return out.str();
}

}  // namespace xmasjump
