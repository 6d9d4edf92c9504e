#pragma once

// Hand-rolled Gregorian calendar walker, independent of <chrono>. Used to
// cross-check window month arithmetic and leap-year handling.

namespace fsgrid::testing {

inline bool oracle_is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int oracle_month_length(int y, int m) {
  static const int len[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && oracle_is_leap(y)) return 29;
  return len[m - 1];
}

struct OracleYmd {
  int y, m, d;
  bool operator==(const OracleYmd&) const = default;
};

inline OracleYmd oracle_next_day(OracleYmd x) {
  if (x.d < oracle_month_length(x.y, x.m)) return {x.y, x.m, x.d + 1};
  if (x.m < 12) return {x.y, x.m + 1, 1};
  return {x.y + 1, 1, 1};
}

inline OracleYmd oracle_prev_day(OracleYmd x) {
  if (x.d > 1) return {x.y, x.m, x.d - 1};
  if (x.m > 1) return {x.y, x.m - 1, oracle_month_length(x.y, x.m - 1)};
  return {x.y - 1, 12, oracle_month_length(x.y - 1, 12)};
}

// Month shift with day-of-month clamped to the target month length.
inline OracleYmd oracle_add_months(OracleYmd x, int n) {
  int idx = x.y * 12 + (x.m - 1) + n;
  int y = idx / 12, m = idx % 12;
  if (m < 0) {
    m += 12;
    y -= 1;
  }
  int d = x.d;
  int len = oracle_month_length(y, m + 1);
  if (d > len) d = len;
  return {y, m + 1, d};
}

}  // namespace fsgrid::testing
