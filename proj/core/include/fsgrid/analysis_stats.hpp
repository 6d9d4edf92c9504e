#pragma once

#include <span>

#include "fsgrid/date.hpp"

namespace fsgrid {

/// Ordinary least squares trend of a time series against fractional years
/// elapsed since start_date. The slope unit is "per year" (days / 365.25);
/// r_squared is the only abscissa-scale-free quantity.
struct TrendFit {
  double slope = 0.0;
  double intercept = 0.0;   // fitted value at start_date
  double r_squared = 0.0;   // in [0, 1]; 0 by convention when the target is constant
  Date start_date;
};

/// Fits value ~ a + b * years_since(start_date) over the points whose date is
/// on or after start_date. Non-finite values are skipped, so a series with
/// missing windows can be passed directly.
/// Throws InsufficientPoints (< 2 usable points) or DegenerateAbscissa (all
/// usable dates equal).
TrendFit linear_fit(std::span<const Date> dates, std::span<const double> values,
                    Date start_date);

}  // namespace fsgrid
