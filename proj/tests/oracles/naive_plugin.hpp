#pragma once

// Reference route for the two-stage direct plug-in bandwidth: plain O(n^2)
// double sums, no pairing tricks, no shared constants with the library.
// Tests compare fsgrid::sj_bandwidth against this.

#include <cmath>
#include <cstddef>
#include <vector>

namespace fsgrid::testing {

inline double naive_normal_pdf(double u) {
  return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::acos(-1.0));
}

// Fourth derivative of the standard normal density.
inline double naive_phi4(double u) {
  const double u2 = u * u;
  return (u2 * u2 - 6.0 * u2 + 3.0) * naive_normal_pdf(u);
}

inline double naive_sj_bandwidth(const std::vector<double>& x) {
  const double pi = std::acos(-1.0);
  const std::size_t n = x.size();

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  // Normal-scale estimate of the sixth-derivative functional.
  const double psi6 = -15.0 / (16.0 * std::sqrt(pi) * std::pow(sd, 7));

  // AMSE-optimal pilot for estimating psi4, Gaussian kernel: K''''(0) = 3/sqrt(2 pi).
  const double k4_zero = 3.0 / std::sqrt(2.0 * pi);
  const double g = std::pow(2.0 * k4_zero / (-psi6 * static_cast<double>(n)), 1.0 / 7.0);

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sum += naive_phi4((x[i] - x[j]) / g);
    }
  }
  const double psi4 = sum / (static_cast<double>(n) * static_cast<double>(n) * std::pow(g, 5));

  const double rk = 1.0 / (2.0 * std::sqrt(pi));
  return std::pow(rk / (psi4 * static_cast<double>(n)), 0.2);
}

}  // namespace fsgrid::testing
