#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fsgrid {

/// Calendar day in the proleptic Gregorian calendar, stored as days since
/// 1970-01-01. Month arithmetic clamps the day of month to the target
/// month's length (Jan 31 + 1 month -> Feb 28/29).
class Date {
 public:
  Date() = default;
  Date(int year, int month, int day);  // throws BadParameters on invalid dates
  static Date from_serial(std::int32_t days);
  static Date parse(std::string_view iso);  // "YYYY-MM-DD"; throws ParseError
  static std::optional<Date> try_parse(std::string_view iso) noexcept;

  std::int32_t serial() const { return days_; }
  int year() const;
  int month() const;  // 1..12
  int day() const;    // 1..31

  Date add_days(std::int64_t n) const;
  Date add_months(int n) const;
  Date first_of_month() const;

  /// Years since the epoch of `origin`, counting actual days / 365.25.
  double years_since(Date origin) const;

  std::string iso() const;

  auto operator<=>(const Date&) const = default;

 private:
  std::int32_t days_ = 0;
};

inline std::int64_t days_between(Date from, Date to) {
  return std::int64_t{to.serial()} - from.serial();
}

/// Whole calendar months from the month of `from` to the month of `to`
/// (ignores the day of month; may be negative).
std::int64_t months_between(Date from, Date to);

}  // namespace fsgrid
