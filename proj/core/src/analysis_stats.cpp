#include "fsgrid/analysis_stats.hpp"

#include <cmath>
#include <vector>

#include "fsgrid/errors.hpp"

namespace fsgrid {

TrendFit linear_fit(std::span<const Date> dates, std::span<const double> values,
                    Date start_date) {
  if (dates.size() != values.size()) {
    throw BadParameters("linear_fit: dates and values differ in length");
  }
  std::vector<double> x, y;
  x.reserve(dates.size());
  y.reserve(dates.size());
  for (std::size_t i = 0; i < dates.size(); ++i) {
    if (dates[i] < start_date) continue;
    if (!std::isfinite(values[i])) continue;
    x.push_back(dates[i].years_since(start_date));
    y.push_back(values[i]);
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw InsufficientPoints("linear_fit: need at least 2 points on/after " +
                             start_date.iso());
  }

  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xm;
    const double dy = y[i] - ym;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) {
    throw DegenerateAbscissa("linear_fit: all usable dates coincide");
  }

  TrendFit fit;
  fit.start_date = start_date;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;

  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
    if (fit.r_squared < 0.0) fit.r_squared = 0.0;
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;
  } else {
    // constant target: define r^2 = 0 instead of failing so batch pipelines
    // that fit every grid location stay total.
    fit.r_squared = 0.0;
  }
  return fit;
}

}  // namespace fsgrid
