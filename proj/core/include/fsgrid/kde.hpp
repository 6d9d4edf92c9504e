#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fsgrid {

/// One window of scalar observations. All values must be finite; missing
/// observations are removed by the caller before construction.
class Samples {
 public:
  explicit Samples(std::vector<double> values);  // BadParameters if empty or non-finite
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::vector<double> values_;
  double min_;
  double max_;
};

/// Positive finite kernel bandwidth, in the units of the samples.
class Bandwidth {
 public:
  explicit Bandwidth(double h);  // BadParameters unless h > 0 and finite
  double value() const { return h_; }

 private:
  double h_;
};

/// Gaussian-kernel density estimate over a fixed sample set. Immutable after
/// construction; evaluation is safe from any number of threads.
class DensityModel {
 public:
  DensityModel(Samples samples, Bandwidth bandwidth);

  const Samples& samples() const { return samples_; }
  Bandwidth bandwidth() const { return bandwidth_; }

  double pdf(double x) const;
  double pdf_derivative(double x) const;

  /// Density and its derivative on the uniform grid x0 + k*dx, 0 <= k < count.
  /// One pass over the samples; the shared kernel evaluation makes this the
  /// preferred path for quadrature.
  void evaluate_grid(double x0, double dx, std::size_t count, std::span<double> pdf_out,
                     std::span<double> deriv_out) const;

 private:
  Samples samples_;
  Bandwidth bandwidth_;
};

/// Sheather-Jones two-stage direct plug-in bandwidth: a normal-scale estimate
/// of the sixth-derivative functional (scale = sample standard deviation,
/// divisor n-1) feeds the pilot bandwidth for the pairwise estimate of the
/// fourth-derivative functional, which plugs into the AMISE-optimal formula
/// h = [R(K) / (n * psi4)]^(1/5) for the Gaussian kernel.
/// Throws InsufficientData (n < 2) or DegenerateSample (zero variance).
Bandwidth sj_bandwidth(const Samples& samples);

double kde_pdf(const DensityModel& model, double x);
double kde_pdf_derivative(const DensityModel& model, double x);

}  // namespace fsgrid
