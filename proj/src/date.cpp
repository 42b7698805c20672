#include "newslens/date.hpp"

#include <chrono>
#include <cstdio>

#include "newslens/error.hpp"

namespace newslens {

namespace {

bool parse_digits(std::string_view s, int& out) {
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return !s.empty();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  Date d;
  if (!parse_digits(s.substr(0, 4), d.year) || !parse_digits(s.substr(5, 2), d.month) ||
      !parse_digits(s.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok()) return std::nullopt;
  return d;
}

Date Date::parse_or_throw(std::string_view s, std::string_view what) {
  auto d = parse(s);
  if (!d) {
    throw InvalidArgument("invalid date for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return *d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

YearMonth YearMonth::from_index(int index) { return {index / 12, index % 12 + 1}; }

Date YearMonth::last_day() const {
  const std::chrono::year_month_day_last last{
      std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(month)} / std::chrono::last};
  return {year, month, static_cast<int>(static_cast<unsigned>(last.day()))};
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

}  // namespace newslens
