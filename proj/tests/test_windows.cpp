#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "calendar.hpp"
#include "doctest.h"
#include "fsgrid/errors.hpp"
#include "fsgrid/windows.hpp"

using namespace fsgrid;

namespace {

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed, double mu = 0.0,
                                 double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(mu, sigma);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

testing::OracleYmd as_oracle(Date d) { return {d.year(), d.month(), d.day()}; }

}  // namespace

TEST_CASE("time axis validation") {
  CHECK_THROWS_AS(TimeAxis({Date(2000, 1, 2), Date(2000, 1, 1)}), BadParameters);
  CHECK_THROWS_AS(TimeAxis({Date(2000, 1, 1), Date(2000, 1, 1)}), BadParameters);
  const TimeAxis axis = TimeAxis::daily(Date(2000, 2, 27), Date(2000, 3, 1));
  REQUIRE(axis.size() == 4);  // 2000 is a leap year
  CHECK(axis[1] == Date(2000, 2, 28));
  CHECK(axis[2] == Date(2000, 2, 29));
}

TEST_CASE("window spec validation") {
  WindowSpec s;
  CHECK_NOTHROW(s.validate());
  s.step_months = 61;
  CHECK_THROWS_AS(s.validate(), BadParameters);
  s = WindowSpec{};
  s.step_months = 0;
  CHECK_THROWS_AS(s.validate(), BadParameters);
  s = WindowSpec{};
  s.min_valid = 1;
  CHECK_THROWS_AS(s.validate(), BadParameters);
  CHECK_THROWS_AS(make_windows(TimeAxis{}, WindowSpec{}), EmptyAxis);
}

TEST_CASE("reference daily axis produces the documented window boundaries") {
  const TimeAxis axis = TimeAxis::daily(Date(1948, 1, 1), Date(2018, 11, 30));
  const auto windows = make_windows(axis, WindowSpec{});
  REQUIRE(windows.size() == 792);
  CHECK(windows.front().start == Date(1948, 1, 1));
  CHECK(windows.front().end == Date(1952, 12, 31));
  CHECK(windows.back().start == Date(2013, 12, 1));
  CHECK(windows.back().end == Date(2018, 11, 30));
  CHECK(windows.front().last - windows.front().first == 1827);  // two leap years

  // Every window must satisfy end == start + width months - 1 day, per the
  // independent calendar walker.
  for (const auto& w : windows) {
    const auto expect = testing::oracle_prev_day(testing::oracle_add_months(as_oracle(w.start), 60));
    CHECK(as_oracle(w.end) == expect);
    CHECK(w.start.day() == 1);
  }
  // Consecutive windows shift by exactly one month.
  for (std::size_t i = 1; i < windows.size(); ++i) {
    CHECK(as_oracle(windows[i].start) == testing::oracle_add_months(as_oracle(windows[i - 1].start), 1));
  }
}

TEST_CASE("short axes emit zero or one window") {
  // 59 months: 1948-01-01 .. 1952-11-30.
  const TimeAxis short_axis = TimeAxis::daily(Date(1948, 1, 1), Date(1952, 11, 30));
  CHECK(make_windows(short_axis, WindowSpec{}).empty());

  // Exactly 60 months: one window.
  const TimeAxis exact = TimeAxis::daily(Date(1948, 1, 1), Date(1952, 12, 31));
  const auto one = make_windows(exact, WindowSpec{});
  REQUIRE(one.size() == 1);
  CHECK(one.front().start == Date(1948, 1, 1));
  CHECK(one.front().end == Date(1952, 12, 31));
  CHECK(one.front().first == 0);
  CHECK(one.front().last == exact.size());
}

TEST_CASE("all-missing series yields all-missing measures of matching length") {
  const TimeAxis axis = TimeAxis::daily(Date(1990, 1, 1), Date(1997, 12, 31));
  const std::vector<double> values(axis.size(), 1.5);
  const std::vector<std::uint8_t> mask(axis.size(), 0);
  const MeasureSeries ms = analyze_series(values, mask, axis, WindowSpec{}, QuadratureSpec{});
  CHECK(ms.size() == make_windows(axis, WindowSpec{}).size());
  CHECK(ms.valid_count() == 0);
  CHECK_FALSE(ms.standardized);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    CHECK(std::isnan(ms.sep[i]));
    CHECK(std::isnan(ms.fim[i]));
    CHECK(std::isnan(ms.fsc[i]));
  }
}

TEST_CASE("gaussian series concentrates near fsc = 1") {
  const TimeAxis axis = TimeAxis::daily(Date(1948, 1, 1), Date(1955, 12, 31));
  const auto values = normal_draws(axis.size(), 33001);
  const MeasureSeries ms = analyze_series(values, axis, WindowSpec{}, QuadratureSpec{});
  REQUIRE(ms.size() == 37);
  CHECK(ms.valid_count() == ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    CHECK(ms.fsc[i] >= 0.8);
    CHECK(ms.fsc[i] <= 1.3);
    CHECK(ms.fsc[i] == ms.sep[i] * ms.fim[i]);
  }
}

TEST_CASE("variance switch moves sep by about the variance ratio") {
  const TimeAxis axis = TimeAxis::daily(Date(1948, 1, 1), Date(1959, 12, 31));
  const Date switch_date(1954, 1, 1);
  std::vector<double> values(axis.size());
  std::mt19937_64 rng(33002);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    values[i] = dist(rng) * (axis[i] < switch_date ? 1.0 : 3.0);
  }
  WindowSpec spec;
  spec.width_months = 24;
  spec.step_months = 3;
  const MeasureSeries ms = analyze_series(values, axis, spec, QuadratureSpec{});
  const auto windows = make_windows(axis, spec);
  double before = 0.0, after = 0.0;
  std::size_t nb = 0, na = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (!ms.valid[i]) continue;
    if (windows[i].end < switch_date) {
      before += ms.sep[i];
      ++nb;
    } else if (windows[i].start >= switch_date) {
      after += ms.sep[i];
      ++na;
    }
  }
  REQUIRE(nb > 0);
  REQUIRE(na > 0);
  const double ratio = (after / static_cast<double>(na)) / (before / static_cast<double>(nb));
  CHECK(ratio >= 7.0);
  CHECK(ratio <= 11.0);
}

TEST_CASE("sparse windows fall below min_valid and go missing") {
  const TimeAxis axis = TimeAxis::daily(Date(1990, 1, 1), Date(1996, 12, 31));
  const auto values = normal_draws(axis.size(), 33003);
  std::vector<std::uint8_t> mask(axis.size(), 1);
  const Date cutoff(1994, 10, 15);
  // Early windows end soon after the cutoff and keep < 100 usable days.
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (axis[i] < cutoff) mask[i] = 0;
  }
  const MeasureSeries ms = analyze_series(values, mask, axis, WindowSpec{}, QuadratureSpec{});
  const auto windows = make_windows(axis, WindowSpec{});
  REQUIRE(ms.size() == windows.size());
  bool saw_missing = false, saw_valid = false;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const bool expect_valid = days_between(cutoff, windows[i].end) + 1 >= 100;
    CHECK(static_cast<bool>(ms.valid[i]) == expect_valid);
    (expect_valid ? saw_valid : saw_missing) = true;
  }
  CHECK(saw_missing);
  CHECK(saw_valid);
}

TEST_CASE("analyze_series is deterministic") {
  const TimeAxis axis = TimeAxis::daily(Date(2000, 1, 1), Date(2006, 12, 31));
  const auto values = normal_draws(axis.size(), 33004);
  const MeasureSeries a = analyze_series(values, axis, WindowSpec{}, QuadratureSpec{});
  const MeasureSeries b = analyze_series(values, axis, WindowSpec{}, QuadratureSpec{});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.valid[i] == b.valid[i]);
    if (a.valid[i]) {
      CHECK(a.sep[i] == b.sep[i]);
      CHECK(a.fim[i] == b.fim[i]);
      CHECK(a.fsc[i] == b.fsc[i]);
    }
  }
}

TEST_CASE("zscore hand example") {
  MeasureSeries ms;
  ms.window_end_dates = {Date(2000, 1, 31), Date(2000, 2, 29), Date(2000, 3, 31)};
  ms.sep = {1.0, 2.0, 3.0};
  ms.fim = {1.0, 2.0, 3.0};
  ms.fsc = {1.0, 2.0, 3.0};
  ms.valid = {1, 1, 1};
  const MeasureSeries z = zscore(ms);
  CHECK(z.standardized);
  CHECK(z.sep[0] == doctest::Approx(-1.224744871391589).epsilon(1e-12));
  CHECK(z.sep[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(z.sep[2] == doctest::Approx(1.224744871391589).epsilon(1e-12));
}

TEST_CASE("zscore rejects degenerate sequences") {
  MeasureSeries constant;
  constant.window_end_dates = {Date(2000, 1, 31), Date(2000, 2, 29)};
  constant.sep = {2.0, 2.0};
  constant.fim = {1.0, 2.0};
  constant.fsc = {2.0, 4.0};
  constant.valid = {1, 1};
  CHECK_THROWS_AS(zscore(constant), DegenerateSeries);

  MeasureSeries lone;
  lone.window_end_dates = {Date(2000, 1, 31), Date(2000, 2, 29)};
  lone.sep = {2.0, 0.0};
  lone.fim = {1.0, 0.0};
  lone.fsc = {2.0, 0.0};
  lone.valid = {1, 0};
  CHECK_THROWS_AS(zscore(lone), DegenerateSeries);
}

TEST_CASE("zscore normalizes each measure and keeps missing entries missing") {
  const TimeAxis axis = TimeAxis::daily(Date(1962, 1, 1), Date(1969, 12, 31));
  auto values = normal_draws(axis.size(), 33005, 5.0, 2.0);
  std::vector<std::uint8_t> mask(axis.size(), 1);
  for (std::size_t i = 0; i < axis.size(); i += 7) mask[i] = 0;  // weekly gaps
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (axis[i] >= Date(1965, 3, 1)) mask[i] = 0;  // late windows starve out
  }
  const MeasureSeries raw = analyze_series(values, mask, axis, WindowSpec{}, QuadratureSpec{});
  REQUIRE(raw.valid_count() >= 2);
  REQUIRE(raw.valid_count() < raw.size());
  const MeasureSeries z = zscore(raw);
  CHECK(z.valid == raw.valid);
  CHECK(z.window_end_dates == raw.window_end_dates);

  for (const auto* seq : {&z.sep, &z.fim, &z.fsc}) {
    double sum = 0.0, ss = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!z.valid[i]) {
        CHECK(std::isnan((*seq)[i]));
        continue;
      }
      sum += (*seq)[i];
      ++n;
    }
    const double mean = sum / static_cast<double>(n);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z.valid[i]) ss += ((*seq)[i] - mean) * ((*seq)[i] - mean);
    }
    CHECK(std::fabs(mean) < 1e-10);
    CHECK(std::fabs(std::sqrt(ss / static_cast<double>(n)) - 1.0) < 1e-10);
  }
}
