#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace newslens {

/// Calendar date at day precision.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  /// Parses strict "YYYY-MM-DD"; nullopt for bad syntax or impossible dates.
  static std::optional<Date> parse(std::string_view s);
  /// Like parse() but throws InvalidArgument naming `what`.
  static Date parse_or_throw(std::string_view s, std::string_view what);

  std::string to_string() const;
  auto operator<=>(const Date&) const = default;
};

/// Calendar month, totally ordered by its linear index.
struct YearMonth {
  int year = 1970;
  int month = 1;

  static YearMonth of(const Date& d) { return {d.year, d.month}; }
  static YearMonth from_index(int index);
  int index() const { return year * 12 + (month - 1); }
  Date first_day() const { return {year, month, 1}; }
  Date last_day() const;
  std::string to_string() const;
  auto operator<=>(const YearMonth&) const = default;
};

/// Inclusive [start, end] day range.
struct DateRange {
  Date start;
  Date end;

  bool contains(const Date& d) const { return start <= d && d <= end; }
  /// Number of calendar months touched by the range.
  int month_count() const { return YearMonth::of(end).index() - YearMonth::of(start).index() + 1; }
  bool operator==(const DateRange&) const = default;
};

}  // namespace newslens
