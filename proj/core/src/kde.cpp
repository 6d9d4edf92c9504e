#include "fsgrid/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// exp(-z^2/2) is exactly zero in double arithmetic beyond |z| ~ 38.6; the
// cutoff keeps grid evaluation bit-identical to the full sum while skipping
// terms that cannot contribute.
constexpr double kKernelCutoff = 40.0;

// Fourth derivative of the standard normal density.
double phi4(double u) {
  const double u2 = u * u;
  return (u2 * u2 - 6.0 * u2 + 3.0) * kInvSqrt2Pi * std::exp(-0.5 * u2);
}

}  // namespace

Samples::Samples(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw BadParameters("samples: empty");
  min_ = max_ = values_.front();
  for (double v : values_) {
    if (!std::isfinite(v)) throw BadParameters("samples: non-finite value");
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
}

Bandwidth::Bandwidth(double h) : h_(h) {
  if (!std::isfinite(h) || h <= 0.0) throw BadParameters("bandwidth must be positive and finite");
}

DensityModel::DensityModel(Samples samples, Bandwidth bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {}

double DensityModel::pdf(double x) const {
  const auto& xs = samples_.values();
  const double h = bandwidth_.value();
  double sum = 0.0;
  for (double xi : xs) {
    const double u = (x - xi) / h;
    sum += std::exp(-0.5 * u * u);
  }
  return sum * kInvSqrt2Pi / (static_cast<double>(xs.size()) * h);
}

double DensityModel::pdf_derivative(double x) const {
  const auto& xs = samples_.values();
  const double h = bandwidth_.value();
  double sum = 0.0;
  for (double xi : xs) {
    const double diff = x - xi;
    const double u = diff / h;
    sum += diff * std::exp(-0.5 * u * u);
  }
  return -sum * kInvSqrt2Pi / (static_cast<double>(xs.size()) * h * h * h);
}

void DensityModel::evaluate_grid(double x0, double dx, std::size_t count,
                                 std::span<double> pdf_out, std::span<double> deriv_out) const {
  if (!(std::isfinite(x0) && std::isfinite(dx) && dx > 0.0)) {
    throw BadParameters("evaluate_grid: grid origin/step must be finite with dx > 0");
  }
  if (pdf_out.size() < count || deriv_out.size() < count) {
    throw BadParameters("evaluate_grid: output spans too small");
  }
  std::fill_n(pdf_out.begin(), count, 0.0);
  std::fill_n(deriv_out.begin(), count, 0.0);

  const auto& xs = samples_.values();
  const double h = bandwidth_.value();
  const double reach = kKernelCutoff * h;
  const auto last = static_cast<double>(count - 1);

  for (double xi : xs) {
    double klo = std::floor((xi - reach - x0) / dx) - 1.0;
    double khi = std::ceil((xi + reach - x0) / dx) + 1.0;
    klo = std::clamp(klo, 0.0, last);
    khi = std::clamp(khi, 0.0, last);
    for (std::size_t k = static_cast<std::size_t>(klo); k <= static_cast<std::size_t>(khi); ++k) {
      const double diff = (x0 + static_cast<double>(k) * dx) - xi;
      const double u = diff / h;
      const double w = std::exp(-0.5 * u * u);
      pdf_out[k] += w;
      deriv_out[k] += diff * w;
    }
  }

  const double n = static_cast<double>(xs.size());
  const double pdf_norm = kInvSqrt2Pi / (n * h);
  const double deriv_norm = -kInvSqrt2Pi / (n * h * h * h);
  for (std::size_t k = 0; k < count; ++k) {
    pdf_out[k] *= pdf_norm;
    deriv_out[k] *= deriv_norm;
  }
}

Bandwidth sj_bandwidth(const Samples& samples) {
  const auto& x = samples.values();
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientData("bandwidth selection needs at least 2 samples");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw DegenerateSample("zero sample variance");

  // Stage 1: normal-scale psi6.
  const double psi6 = -15.0 / (16.0 * kSqrtPi * std::pow(sd, 7));

  // Stage 2: pilot bandwidth and the pairwise psi4 estimate.
  const double k4_zero = 3.0 * kInvSqrt2Pi;
  const double g = std::pow(2.0 * k4_zero / (-psi6 * static_cast<double>(n)), 1.0 / 7.0);

  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += phi4((x[i] - x[j]) / g);
    }
  }
  const double dn = static_cast<double>(n);
  const double psi4 = (2.0 * acc + dn * k4_zero) / (dn * dn * std::pow(g, 5));
  if (!(psi4 > 0.0) || !std::isfinite(psi4)) {
    throw NumericalFailure("plug-in curvature estimate is not positive");
  }

  const double rk = 1.0 / (2.0 * kSqrtPi);
  return Bandwidth(std::pow(rk / (psi4 * dn), 0.2));
}

double kde_pdf(const DensityModel& model, double x) {
  if (!std::isfinite(x)) throw BadParameters("kde_pdf: evaluation point must be finite");
  return model.pdf(x);
}

double kde_pdf_derivative(const DensityModel& model, double x) {
  if (!std::isfinite(x)) throw BadParameters("kde_pdf_derivative: evaluation point must be finite");
  return model.pdf_derivative(x);
}

}  // namespace fsgrid
