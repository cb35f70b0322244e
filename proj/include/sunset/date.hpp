#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace sunset {

/// Day-precision calendar date. Always holds a valid Gregorian date once
/// constructed through parse() / make().
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  /// Strict "YYYY-MM-DD" (month/day may be 1 or 2 digits); rejects
  /// partial dates and impossible calendar dates.
  static std::optional<Date> parse(std::string_view raw);

  /// Throwing variant for contexts where the date is an invariant.
  static Date parse_or_throw(std::string_view raw, const std::string& context);

  std::string str() const;  // zero-padded YYYY-MM-DD
};

bool is_valid_date(int year, int month, int day);

/// Total function: returns the parsed date, or `fallback` when `raw` is
/// empty, partial (year-only / year-month) or not a real calendar date.
Date normalize_date(std::string_view raw, const Date& fallback);

}  // namespace sunset
