#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fsgrid/date.hpp"
#include "fsgrid/fisher_shannon.hpp"

namespace fsgrid {

// Strictly increasing sequence of calendar dates (day resolution).
class TimeAxis {
 public:
  TimeAxis() = default;
  explicit TimeAxis(std::vector<Date> dates);

  // Every day from first to last inclusive.
  static TimeAxis daily(Date first, Date last);

  const std::vector<Date>& dates() const { return dates_; }
  std::size_t size() const { return dates_.size(); }
  bool empty() const { return dates_.empty(); }
  const Date& front() const { return dates_.front(); }
  const Date& back() const { return dates_.back(); }
  const Date& operator[](std::size_t i) const { return dates_[i]; }

 private:
  std::vector<Date> dates_;
};

struct WindowSpec {
  int width_months = 60;
  int step_months = 1;
  std::size_t min_valid = 100;

  void validate() const;  // throws BadParameters
};

// One sliding window: calendar span plus the half-open index range [first,
// last) of axis entries falling inside it.
struct Window {
  Date start;
  Date end;
  std::size_t first = 0;
  std::size_t last = 0;
};

// Per-window measure sequences keyed by window end date. Entries where
// valid[w] == 0 are missing; their numeric slots hold quiet NaN.
struct MeasureSeries {
  std::vector<Date> window_end_dates;
  std::vector<double> sep;
  std::vector<double> fim;
  std::vector<double> fsc;
  std::vector<std::uint8_t> valid;
  bool standardized = false;

  std::size_t size() const { return window_end_dates.size(); }
  std::size_t valid_count() const;
};

// Calendar-month sliding windows. The first window starts on the first day of
// the month containing axis.front(); each spans exactly width_months months
// (end = start + width_months months - 1 day); windows whose end passes
// axis.back() are not emitted.
std::vector<Window> make_windows(const TimeAxis& axis, const WindowSpec& spec);

// Windowed Fisher-Shannon estimation of one series. values/valid_mask align
// with the axis; windows with fewer than min_valid usable values, or whose
// sample degenerates numerically, come back missing rather than throwing.
MeasureSeries analyze_series(std::span<const double> values,
                             std::span<const std::uint8_t> valid_mask, const TimeAxis& axis,
                             const WindowSpec& spec, const QuadratureSpec& quad);

// Convenience overload: every value present.
MeasureSeries analyze_series(std::span<const double> values, const TimeAxis& axis,
                             const WindowSpec& spec, const QuadratureSpec& quad);

// Independently z-scores sep, fim and fsc over their non-missing entries
// (population standard deviation). Missing entries stay missing.
MeasureSeries zscore(const MeasureSeries& series);

}  // namespace fsgrid
