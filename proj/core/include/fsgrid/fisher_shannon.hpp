#pragma once

#include <cstddef>

#include "fsgrid/kde.hpp"

namespace fsgrid {

// Quadrature settings for the SEP/FIM integrals. The support runs from
// min(sample) - extension_factor*h to max(sample) + extension_factor*h.
// density_floor is relative to the peak of the estimated density: grid points
// where f < density_floor * max(f) contribute zero to both integrands.
struct QuadratureSpec {
  double extension_factor = 8.0;
  std::size_t num_points = 4096;
  double density_floor = 1e-300;

  void validate() const;  // throws BadParameters
};

// One point of the Fisher-Shannon information plane. fsc is stored as the
// product sep * fim, never estimated independently.
struct FsPoint {
  double sep = 0.0;
  double fim = 0.0;
  double fsc = 0.0;
  std::size_t n_used = 0;
};

// Differential entropy -integral(f log f) in nats, composite trapezoid rule.
double estimate_entropy(const DensityModel& model, const QuadratureSpec& quad);

// Shannon entropy power exp(2H) / (2*pi*e).
double estimate_sep(const DensityModel& model, const QuadratureSpec& quad);

// Fisher information integral(f'^2 / f).
double estimate_fim(const DensityModel& model, const QuadratureSpec& quad);

// SJ bandwidth + KDE + both integrals from a single grid evaluation.
FsPoint fs_point(const Samples& samples, const QuadratureSpec& quad);

}  // namespace fsgrid
