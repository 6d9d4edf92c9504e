#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fsgrid/errors.hpp"
#include "fsgrid/kde.hpp"
#include "oracles/naive_plugin.hpp"

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

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("sj_bandwidth rejects degenerate input") {
  CHECK_THROWS_AS(sj_bandwidth(Samples({5.0, 5.0, 5.0})), DegenerateSample);
  CHECK_THROWS_AS(sj_bandwidth(Samples({1.0})), InsufficientData);
}

TEST_CASE("samples validate finiteness") {
  CHECK_THROWS_AS(Samples({}), BadParameters);
  CHECK_THROWS_AS(Samples({1.0, std::nan("")}), BadParameters);
  CHECK_THROWS_AS(Samples({1.0, INFINITY}), BadParameters);
  CHECK_THROWS_AS(Bandwidth(0.0), BadParameters);
  CHECK_THROWS_AS(Bandwidth(-1.0), BadParameters);
  CHECK_THROWS_AS(Bandwidth(std::nan("")), BadParameters);
}

TEST_CASE("sj_bandwidth scale equivariance") {
  auto base = normal_draws(400, 91);
  const double h0 = sj_bandwidth(Samples(base)).value();
  for (double a : {0.25, 3.7, 100.0}) {
    std::vector<double> scaled(base);
    for (auto& v : scaled) v *= a;
    const double ha = sj_bandwidth(Samples(scaled)).value();
    CHECK(rel_diff(ha, a * h0) < 1e-10);
  }
}

TEST_CASE("sj_bandwidth shift invariance") {
  auto base = normal_draws(300, 17);
  const double h0 = sj_bandwidth(Samples(base)).value();
  std::vector<double> shifted(base);
  for (auto& v : shifted) v += 250.0;
  CHECK(rel_diff(sj_bandwidth(Samples(shifted)).value(), h0) < 1e-9);
}

TEST_CASE("sj_bandwidth matches the naive plug-in oracle") {
  // n = 1000 standard normal draws, fixed seed.
  auto x = normal_draws(1000, 20240817);
  const double h = sj_bandwidth(Samples(x)).value();
  const double h_oracle = fsgrid::testing::naive_sj_bandwidth(x);
  CHECK(rel_diff(h, h_oracle) < 1e-8);

  // Brute-force equivalence on small random inputs, tighter tolerance.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-2.0, 5.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t n = 20 + static_cast<std::size_t>(rng() % 180);
    std::vector<double> y(n);
    for (auto& v : y) v = unif(rng);
    CHECK(rel_diff(sj_bandwidth(Samples(y)).value(), fsgrid::testing::naive_sj_bandwidth(y)) <
          1e-10);
  }
}

TEST_CASE("kde_pdf single kernel at its center") {
  DensityModel m{Samples({0.0}), Bandwidth(1.0)};
  CHECK(kde_pdf(m, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
}

TEST_CASE("kde_pdf two-kernel hand value") {
  DensityModel m{Samples({-1.0, 1.0}), Bandwidth(1.0)};
  // e^(-1/2)/sqrt(2 pi)
  CHECK(kde_pdf(m, 0.0) == doctest::Approx(0.24197072451914337).epsilon(1e-12));
}

TEST_CASE("kde_pdf integrates to one") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int rep = 0; rep < 5; ++rep) {
    std::size_t n = 2 + rng() % 60;
    std::vector<double> x(n);
    for (auto& v : x) v = unif(rng);
    const double h = 0.05 + 0.5 * std::generate_canonical<double, 53>(rng);
    DensityModel m{Samples(x), Bandwidth(h)};

    const std::size_t pts = 4096;
    const double lo = m.samples().min() - 8.0 * h;
    const double hi = m.samples().max() + 8.0 * h;
    const double dx = (hi - lo) / static_cast<double>(pts - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < pts; ++k) {
      const double f = kde_pdf(m, lo + static_cast<double>(k) * dx);
      sum += (k == 0 || k == pts - 1) ? 0.5 * f : f;
    }
    CHECK(sum * dx == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("kde_pdf_derivative hand values") {
  DensityModel sym{Samples({-1.0, 1.0}), Bandwidth(1.0)};
  CHECK(std::abs(kde_pdf_derivative(sym, 0.0)) <= 1e-16);

  DensityModel single{Samples({0.0}), Bandwidth(1.0)};
  CHECK(kde_pdf_derivative(single, 1.0) ==
        doctest::Approx(-0.24197072451914337).epsilon(1e-12));
}

TEST_CASE("kde_pdf_derivative matches central finite differences") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 2 + rng() % 40;
    std::vector<double> x(n);
    for (auto& v : x) v = unif(rng);
    const double h = 0.1 + std::generate_canonical<double, 53>(rng);
    DensityModel m{Samples(x), Bandwidth(h)};
    for (int pt = 0; pt < 10; ++pt) {
      const double at = unif(rng);
      const double step = 1e-6 * h;
      const double fd = (kde_pdf(m, at + step) - kde_pdf(m, at - step)) / (2.0 * step);
      const double d = kde_pdf_derivative(m, at);
      if (std::abs(d) > 1e-12) {
        CHECK(rel_diff(fd, d) < 1e-5);
      }
    }
  }
}

TEST_CASE("kde affine equivariance of the density") {
  auto x = normal_draws(150, 3);
  const double h = sj_bandwidth(Samples(x)).value();
  DensityModel m{Samples(x), Bandwidth(h)};

  const double a = 7.0, b = -100.0;
  std::vector<double> y(x);
  for (auto& v : y) v = a * v + b;
  DensityModel my{Samples(y), Bandwidth(a * h)};

  for (double at : {-1.5, -0.2, 0.0, 0.9, 2.4}) {
    CHECK(kde_pdf(my, a * at + b) == doctest::Approx(kde_pdf(m, at) / a).epsilon(1e-10));
  }
}

TEST_CASE("evaluate_grid agrees with pointwise evaluation") {
  auto x = normal_draws(64, 11);
  const double h = sj_bandwidth(Samples(x)).value();
  DensityModel m{Samples(x), Bandwidth(h)};

  const std::size_t pts = 257;
  const double x0 = m.samples().min() - 8.0 * h;
  const double dx = (m.samples().max() + 8.0 * h - x0) / static_cast<double>(pts - 1);
  std::vector<double> pdf(pts), deriv(pts);
  m.evaluate_grid(x0, dx, pts, pdf, deriv);
  for (std::size_t k = 0; k < pts; ++k) {
    const double at = x0 + static_cast<double>(k) * dx;
    CHECK(pdf[k] == doctest::Approx(m.pdf(at)).epsilon(1e-14));
    CHECK(deriv[k] == doctest::Approx(m.pdf_derivative(at)).epsilon(1e-13));
  }
}
