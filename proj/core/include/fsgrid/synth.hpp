#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fsgrid/date.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/windows.hpp"

namespace fsgrid {

enum class GeneratorKind { gaussian, gaussian_mixture_2, variance_switch, rank1_field };

GeneratorKind generator_kind_from_string(std::string_view name);  // BadParameters
std::string_view to_string(GeneratorKind kind);

// Parameters for the synthetic generators. Only the fields of the selected
// kind matter:
//   gaussian           mean, sigma
//   gaussian_mixture_2 mean, sigma, separation (distance between the mode
//                      centres at mean +- separation/2), weight (probability
//                      of the upper mode)
//   variance_switch    mean, sigma (before switch_date), sigma2 (on/after)
//   rank1_field        mean, amplitude, trend_per_year, noise_scale; the
//                      shared signal g(t) = amplitude * z(t) +
//                      trend_per_year * years(t) multiplies a fixed smooth
//                      spatial pattern of unit norm
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::gaussian;
  double mean = 0.0;
  double sigma = 1.0;
  double separation = 0.0;
  double weight = 0.5;
  double sigma2 = 1.0;
  Date switch_date{};
  double amplitude = 1.0;
  double trend_per_year = 0.0;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws BadParameters
};

// Reproducibility contract, fixed across platforms and releases: each
// location (i, j) draws from std::mt19937_64 seeded with
// stream_seed(seed, i, j) = splitmix64(splitmix64(splitmix64(seed) ^ i) ^ j);
// raw 64-bit outputs map to (0,1) via ((x >> 12) + 0.5) * 2^-52 and to
// standard normals through the AS241 inverse normal CDF. gaussian uses one
// draw per sample, gaussian_mixture_2 two (branch then normal),
// variance_switch one; rank1_field draws its shared g(t) stream from
// pseudo-location (0xFFFFFFFF, 0xFFFFFFFF) and per-location noise streams as
// usual. gen_series is the (0, 0) location stream.
namespace prng {
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::uint32_t lat_idx, std::uint32_t lon_idx);
double uniform01(std::uint64_t raw);
double inverse_normal_cdf(double p);  // BadParameters outside (0, 1)
}  // namespace prng

// One deterministic series along the axis. rank1_field is field-only and is
// rejected here.
std::vector<double> gen_series(const GeneratorSpec& spec, const TimeAxis& axis);

// Deterministic field: independent per-location series, or the rank-1
// structure for rank1_field. Identical inputs give bit-identical grids
// regardless of evaluation order.
FieldGrid gen_field(const GeneratorSpec& spec, std::vector<double> latitudes,
                    std::vector<double> longitudes, const TimeAxis& axis);

}  // namespace fsgrid
