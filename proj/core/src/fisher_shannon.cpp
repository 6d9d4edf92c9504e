#include "fsgrid/fisher_shannon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace {

struct Integrals {
  double entropy;
  double fim;
};

// Evaluates the KDE and its derivative on the quadrature grid once and forms
// both integrals with the composite trapezoid rule.
Integrals integrate(const DensityModel& model, const QuadratureSpec& quad) {
  quad.validate();
  const double h = model.bandwidth().value();
  const double lo = model.samples().min() - quad.extension_factor * h;
  const double hi = model.samples().max() + quad.extension_factor * h;
  const std::size_t m = quad.num_points;
  const double dx = (hi - lo) / static_cast<double>(m - 1);

  std::vector<double> f(m), df(m);
  model.evaluate_grid(lo, dx, m, f, df);

  const double peak = *std::max_element(f.begin(), f.end());
  const double floor = quad.density_floor * peak;

  double ent_sum = 0.0;
  double fim_sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double w = (k == 0 || k + 1 == m) ? 0.5 : 1.0;
    const double fk = f[k];
    if (fk < floor || fk <= 0.0) continue;
    ent_sum += w * fk * std::log(fk);
    fim_sum += w * df[k] * df[k] / fk;
  }
  const Integrals out{-ent_sum * dx, fim_sum * dx};
  if (!std::isfinite(out.entropy) || !std::isfinite(out.fim)) {
    throw QuadratureFailure("non-finite quadrature result");
  }
  return out;
}

double sep_from_entropy(double entropy) {
  return std::exp(2.0 * entropy) / (2.0 * std::numbers::pi * std::numbers::e);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(extension_factor > 0.0) || !std::isfinite(extension_factor)) {
    throw BadParameters("quadrature: extension_factor must be positive");
  }
  if (num_points < 64) throw BadParameters("quadrature: num_points must be >= 64");
  if (!(density_floor >= 0.0)) throw BadParameters("quadrature: density_floor must be >= 0");
}

double estimate_entropy(const DensityModel& model, const QuadratureSpec& quad) {
  return integrate(model, quad).entropy;
}

double estimate_sep(const DensityModel& model, const QuadratureSpec& quad) {
  return sep_from_entropy(integrate(model, quad).entropy);
}

double estimate_fim(const DensityModel& model, const QuadratureSpec& quad) {
  return integrate(model, quad).fim;
}

FsPoint fs_point(const Samples& samples, const QuadratureSpec& quad) {
  DensityModel model{samples, sj_bandwidth(samples)};
  const Integrals ints = integrate(model, quad);
  FsPoint p;
  p.sep = sep_from_entropy(ints.entropy);
  p.fim = ints.fim;
  p.fsc = p.sep * p.fim;
  p.n_used = samples.size();
  return p;
}

}  // namespace fsgrid
