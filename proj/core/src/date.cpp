#include "fsgrid/date.hpp"

#include <charconv>
#include <chrono>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(std::int32_t serial) {
  return chr::year_month_day{chr::sys_days{chr::days{serial}}};
}

std::int32_t from_ymd(chr::year_month_day ymd) {
  return static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count());
}

bool parse_int_field(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Date::Date(int year, int month, int day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                          chr::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) {
    throw BadParameters("invalid calendar date " + std::to_string(year) + "-" +
                        std::to_string(month) + "-" + std::to_string(day));
  }
  days_ = from_ymd(ymd);
}

Date Date::from_serial(std::int32_t days) {
  Date d;
  d.days_ = days;
  return d;
}

std::optional<Date> Date::try_parse(std::string_view iso) noexcept {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int_field(iso.substr(0, 4), y) || !parse_int_field(iso.substr(5, 2), m) ||
      !parse_int_field(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                          chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return from_serial(from_ymd(ymd));
}

Date Date::parse(std::string_view iso) {
  auto d = try_parse(iso);
  if (!d) throw ParseError("invalid ISO date '" + std::string(iso) + "'");
  return *d;
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }
int Date::month() const { return static_cast<int>(static_cast<unsigned>(to_ymd(days_).month())); }
int Date::day() const { return static_cast<int>(static_cast<unsigned>(to_ymd(days_).day())); }

Date Date::add_days(std::int64_t n) const {
  return from_serial(static_cast<std::int32_t>(days_ + n));
}

Date Date::add_months(int n) const {
  auto ymd = to_ymd(days_) + chr::months{n};
  if (!ymd.ok()) ymd = ymd.year() / ymd.month() / chr::last;  // clamp to month end
  return from_serial(from_ymd(ymd));
}

Date Date::first_of_month() const {
  auto ymd = to_ymd(days_);
  return from_serial(from_ymd(ymd.year() / ymd.month() / chr::day{1}));
}

double Date::years_since(Date origin) const {
  return static_cast<double>(days_between(origin, *this)) / 365.25;
}

std::string Date::iso() const {
  auto ymd = to_ymd(days_);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::int64_t months_between(Date from, Date to) {
  auto a = to_ymd(from.serial());
  auto b = to_ymd(to.serial());
  return (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12ll +
         (static_cast<int>(static_cast<unsigned>(b.month())) -
          static_cast<int>(static_cast<unsigned>(a.month())));
}

}  // namespace fsgrid
