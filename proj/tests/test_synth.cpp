#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fsgrid/eof.hpp"
#include "fsgrid/errors.hpp"
#include "fsgrid/fisher_shannon.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/synth.hpp"
#include "fsgrid/windows.hpp"

using namespace fsgrid;

namespace {

double sample_mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double v : xs) s += v;
  return s / static_cast<double>(xs.size());
}

double sample_var(const std::vector<double>& xs) {
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (double v : xs) ss += (v - m) * (v - m);
  return ss / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("prng primitives match their documented contract") {
  CHECK(prng::splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(prng::stream_seed(42, 1, 2) == 0xF4269628263F4C12ULL);

  CHECK(prng::uniform01(0) > 0.0);
  CHECK(prng::uniform01(0xFFFFFFFFFFFFFFFFULL) < 1.0);
  CHECK(prng::uniform01(0x8000000000000000ULL) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(prng::inverse_normal_cdf(0.5) == 0.0);
  CHECK(prng::inverse_normal_cdf(0.8) == doctest::Approx(0.8416212335729143).epsilon(1e-13));
  CHECK(prng::inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(prng::inverse_normal_cdf(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-13));
  CHECK(prng::inverse_normal_cdf(1e-12) == doctest::Approx(-7.034483825301131).epsilon(1e-13));
  CHECK_THROWS_AS(prng::inverse_normal_cdf(0.0), BadParameters);
  CHECK_THROWS_AS(prng::inverse_normal_cdf(1.0), BadParameters);
}

TEST_CASE("generator spec validation") {
  GeneratorSpec s;
  CHECK_NOTHROW(s.validate());
  s.sigma = 0.0;
  CHECK_THROWS_AS(s.validate(), BadParameters);

  s = GeneratorSpec{};
  s.kind = GeneratorKind::gaussian_mixture_2;
  s.weight = 1.0;
  CHECK_THROWS_AS(s.validate(), BadParameters);

  s = GeneratorSpec{};
  s.kind = GeneratorKind::variance_switch;
  s.sigma2 = -1.0;
  CHECK_THROWS_AS(s.validate(), BadParameters);

  s = GeneratorSpec{};
  s.kind = GeneratorKind::rank1_field;
  s.noise_scale = -0.5;
  CHECK_THROWS_AS(s.validate(), BadParameters);

  CHECK(generator_kind_from_string("variance_switch") == GeneratorKind::variance_switch);
  CHECK_THROWS_AS(generator_kind_from_string("cauchy"), BadParameters);
  CHECK(to_string(GeneratorKind::gaussian_mixture_2) == "gaussian_mixture_2");
}

TEST_CASE("gaussian series has the requested moments") {
  const TimeAxis axis = TimeAxis::daily(Date(1800, 1, 1), Date(2073, 10, 15));
  REQUIRE(axis.size() == 100000);
  GeneratorSpec spec;
  spec.seed = 91001;
  const auto xs = gen_series(spec, axis);
  CHECK(std::fabs(sample_mean(xs)) < 0.02);
  CHECK(std::fabs(std::sqrt(sample_var(xs)) - 1.0) < 0.02);
}

TEST_CASE("zero-separation mixture degenerates to a gaussian") {
  const TimeAxis axis = TimeAxis::daily(Date(2000, 1, 1), Date(2013, 9, 8));
  REQUIRE(axis.size() == 5000);
  GeneratorSpec spec;
  spec.kind = GeneratorKind::gaussian_mixture_2;
  spec.separation = 0.0;
  spec.weight = 0.5;
  spec.seed = 91002;
  const auto xs = gen_series(spec, axis);
  const FsPoint p = fs_point(Samples(xs), QuadratureSpec{});
  CHECK(std::fabs(p.fsc - 1.0) < 0.1);
}

TEST_CASE("mixture moments converge to the analytic values") {
  // weight 0.5, separation 4, sigma 1: mean 0, variance 1 + 4 = 5,
  // fourth central moment 43, so sd(sample var) = sqrt(18/n).
  const TimeAxis axis = TimeAxis::daily(Date(1800, 1, 1), Date(2073, 10, 15));
  GeneratorSpec spec;
  spec.kind = GeneratorKind::gaussian_mixture_2;
  spec.separation = 4.0;
  spec.weight = 0.5;
  spec.seed = 91003;
  const auto xs = gen_series(spec, axis);
  const double n = static_cast<double>(xs.size());
  CHECK(std::fabs(sample_mean(xs)) < 3.0 * std::sqrt(5.0 / n));
  CHECK(std::fabs(sample_var(xs) - 5.0) < 3.0 * std::sqrt(18.0 / n));
}

TEST_CASE("variance switch changes the sample std by the sigma ratio") {
  const TimeAxis axis = TimeAxis::daily(Date(1990, 1, 1), Date(2009, 12, 31));
  GeneratorSpec spec;
  spec.kind = GeneratorKind::variance_switch;
  spec.sigma = 1.0;
  spec.sigma2 = 3.0;
  spec.switch_date = Date(2000, 1, 1);
  spec.seed = 91004;
  const auto xs = gen_series(spec, axis);
  std::vector<double> before, after;
  for (std::size_t k = 0; k < axis.size(); ++k) {
    (axis[k] < spec.switch_date ? before : after).push_back(xs[k]);
  }
  const double ratio = std::sqrt(sample_var(after) / sample_var(before));
  CHECK(ratio > 3.0 * 0.95);
  CHECK(ratio < 3.0 * 1.05);
}

TEST_CASE("series generation is deterministic and matches the field corner") {
  const TimeAxis axis = TimeAxis::daily(Date(2001, 1, 1), Date(2002, 12, 31));
  GeneratorSpec spec;
  spec.kind = GeneratorKind::gaussian_mixture_2;
  spec.separation = 2.0;
  spec.seed = 91005;
  const auto a = gen_series(spec, axis);
  const auto b = gen_series(spec, axis);
  CHECK(a == b);

  const FieldGrid field = gen_field(spec, {10.0, 20.0}, {5.0, 15.0, 25.0}, axis);
  const FieldGrid field2 = gen_field(spec, {10.0, 20.0}, {5.0, 15.0, 25.0}, axis);
  CHECK(field.values == field2.values);

  // location (0, 0) of a field is exactly the single-series stream.
  for (std::size_t k = 0; k < axis.size(); ++k) {
    CHECK(field.values[field.index(0, 0, k)] == a[k]);
  }
  // distinct locations draw from distinct streams.
  CHECK(field.values[field.index(0, 1, 0)] != field.values[field.index(0, 0, 0)]);
}

TEST_CASE("rank1 field is rank one without noise") {
  const TimeAxis axis = TimeAxis::daily(Date(2000, 1, 1), Date(2000, 4, 29));
  GeneratorSpec spec;
  spec.kind = GeneratorKind::rank1_field;
  spec.amplitude = 2.5;
  spec.seed = 91006;
  const FieldGrid field = gen_field(spec, {0.0, 10.0, 20.0, 30.0}, {100.0, 110.0, 120.0, 130.0, 140.0}, axis);

  SpaceTimeMatrix m;
  m.data.resize(20, static_cast<Eigen::Index>(axis.size()));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < axis.size(); ++k)
        m.data(static_cast<Eigen::Index>(i * 5 + j), static_cast<Eigen::Index>(k)) =
            field.values[field.index(i, j, k)];
  const EofResult res = decompose(m);
  CHECK(res.eigenvalues(1) <= 1e-10 * res.eigenvalues(0));

  CHECK_THROWS_AS(gen_series(spec, axis), BadParameters);
}

TEST_CASE("gaussian field passes whole-grid analysis near the boundary") {
  const TimeAxis axis = TimeAxis::daily(Date(2000, 1, 1), Date(2005, 12, 31));
  GeneratorSpec spec;
  spec.seed = 91007;
  const FieldGrid field = gen_field(spec, {-10.0, 10.0}, {0.0, 180.0}, axis);
  const MeasureField mf = analyze_grid(field, WindowSpec{}, QuadratureSpec{});
  std::vector<double> cells;
  for (std::size_t i = 0; i < mf.valid.size(); ++i) {
    if (mf.valid[i]) cells.push_back(mf.fsc[i]);
  }
  REQUIRE(cells.size() == mf.fsc.size());
  std::sort(cells.begin(), cells.end());
  const double median = cells[cells.size() / 2];
  CHECK(median >= 0.9);
  CHECK(median <= 1.2);
}
