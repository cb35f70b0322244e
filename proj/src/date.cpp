#include "sunset/date.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return table[month - 1];
}

// Parses a run of 1..max_digits digits; advances pos past them.
std::optional<int> take_digits(std::string_view s, std::size_t& pos,
                               std::size_t min_digits, std::size_t max_digits) {
  std::size_t start = pos;
  while (pos < s.size() && pos - start < max_digits &&
         std::isdigit(static_cast<unsigned char>(s[pos]))) {
    ++pos;
  }
  if (pos - start < min_digits) return std::nullopt;
  int value = 0;
  std::from_chars(s.data() + start, s.data() + pos, value);
  return value;
}

}  // namespace

bool is_valid_date(int year, int month, int day) {
  if (year < 1 || year > 9999) return false;
  if (month < 1 || month > 12) return false;
  return day >= 1 && day <= days_in_month(year, month);
}

std::optional<Date> Date::parse(std::string_view raw) {
  std::string s = trim(raw);
  std::string_view v = s;
  std::size_t pos = 0;
  auto year = take_digits(v, pos, 4, 4);
  if (!year || pos >= v.size() || v[pos] != '-') return std::nullopt;
  ++pos;
  auto month = take_digits(v, pos, 1, 2);
  if (!month || pos >= v.size() || v[pos] != '-') return std::nullopt;
  ++pos;
  auto day = take_digits(v, pos, 1, 2);
  if (!day || pos != v.size()) return std::nullopt;
  if (!is_valid_date(*year, *month, *day)) return std::nullopt;
  return Date{*year, *month, *day};
}

Date Date::parse_or_throw(std::string_view raw, const std::string& context) {
  auto d = parse(raw);
  if (!d) {
    throw ValidationError(context + ": unparseable date \"" + std::string(raw) + "\"");
  }
  return *d;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date normalize_date(std::string_view raw, const Date& fallback) {
  auto d = Date::parse(raw);
  return d ? *d : fallback;
}

}  // namespace sunset
