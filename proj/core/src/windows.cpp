#include "fsgrid/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsgrid/errors.hpp"
#include "fsgrid/kde.hpp"

namespace fsgrid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MaskedMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double var = 0.0;  // population variance
};

MaskedMoments masked_moments(const std::vector<double>& xs, const std::vector<std::uint8_t>& ok) {
  MaskedMoments m;
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ok[i]) continue;
    ++m.count;
    sum += xs[i];
  }
  if (m.count == 0) return m;
  m.mean = sum / static_cast<double>(m.count);
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ok[i]) continue;
    const double d = xs[i] - m.mean;
    ss += d * d;
  }
  m.var = ss / static_cast<double>(m.count);
  return m;
}

}  // namespace

TimeAxis::TimeAxis(std::vector<Date> dates) : dates_(std::move(dates)) {
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      throw BadParameters("time axis must be strictly increasing");
    }
  }
}

TimeAxis TimeAxis::daily(Date first, Date last) {
  if (last < first) throw BadParameters("time axis: last date before first");
  std::vector<Date> days;
  days.reserve(static_cast<std::size_t>(days_between(first, last)) + 1);
  for (Date d = first; d <= last; d = d.add_days(1)) days.push_back(d);
  return TimeAxis(std::move(days));
}

void WindowSpec::validate() const {
  if (step_months < 1 || width_months < step_months) {
    throw BadParameters("window spec requires width_months >= step_months >= 1");
  }
  if (min_valid < 2) throw BadParameters("window spec requires min_valid >= 2");
}

std::size_t MeasureSeries::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

std::vector<Window> make_windows(const TimeAxis& axis, const WindowSpec& spec) {
  spec.validate();
  if (axis.empty()) throw EmptyAxis("cannot window an empty time axis");

  std::vector<Window> out;
  const auto& ds = axis.dates();
  for (Date start = axis.front().first_of_month();; start = start.add_months(spec.step_months)) {
    const Date end = start.add_months(spec.width_months).add_days(-1);
    if (axis.back() < end) break;
    Window w;
    w.start = start;
    w.end = end;
    w.first = static_cast<std::size_t>(std::lower_bound(ds.begin(), ds.end(), start) - ds.begin());
    w.last = static_cast<std::size_t>(std::upper_bound(ds.begin(), ds.end(), end) - ds.begin());
    out.push_back(w);
  }
  return out;
}

MeasureSeries analyze_series(std::span<const double> values,
                             std::span<const std::uint8_t> valid_mask, const TimeAxis& axis,
                             const WindowSpec& spec, const QuadratureSpec& quad) {
  if (values.size() != axis.size() || valid_mask.size() != axis.size()) {
    throw BadParameters("analyze_series: values/mask must align with the time axis");
  }
  quad.validate();
  const std::vector<Window> windows = make_windows(axis, spec);

  MeasureSeries out;
  out.window_end_dates.reserve(windows.size());
  out.sep.assign(windows.size(), kNaN);
  out.fim.assign(windows.size(), kNaN);
  out.fsc.assign(windows.size(), kNaN);
  out.valid.assign(windows.size(), 0);
  for (const Window& w : windows) out.window_end_dates.push_back(w.end);

  std::vector<double> buf;
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    const Window& w = windows[wi];
    buf.clear();
    for (std::size_t i = w.first; i < w.last; ++i) {
      if (valid_mask[i]) buf.push_back(values[i]);
    }
    if (buf.size() < spec.min_valid) continue;
    const auto [mn, mx] = std::minmax_element(buf.begin(), buf.end());
    if (!(*mn < *mx)) continue;  // zero variance
    try {
      const FsPoint p = fs_point(Samples(buf), quad);
      out.sep[wi] = p.sep;
      out.fim[wi] = p.fim;
      out.fsc[wi] = p.fsc;
      out.valid[wi] = 1;
    } catch (const DegenerateSample&) {
    } catch (const NumericalFailure&) {
      // A window whose sample defeats the bandwidth selector is reported as
      // missing; one bad window must not abort a whole-grid run.
    }
  }
  return out;
}

MeasureSeries analyze_series(std::span<const double> values, const TimeAxis& axis,
                             const WindowSpec& spec, const QuadratureSpec& quad) {
  const std::vector<std::uint8_t> mask(values.size(), 1);
  return analyze_series(values, mask, axis, spec, quad);
}

MeasureSeries zscore(const MeasureSeries& series) {
  MeasureSeries out = series;
  for (auto* seq : {&out.sep, &out.fim, &out.fsc}) {
    const MaskedMoments m = masked_moments(*seq, out.valid);
    if (m.count < 2) throw DegenerateSeries("z-score needs at least 2 non-missing values");
    if (!(m.var > 0.0)) throw DegenerateSeries("z-score of a constant measure sequence");
    const double sd = std::sqrt(m.var);
    for (std::size_t i = 0; i < seq->size(); ++i) {
      if (out.valid[i]) (*seq)[i] = ((*seq)[i] - m.mean) / sd;
    }
  }
  out.standardized = true;
  return out;
}

}  // namespace fsgrid
