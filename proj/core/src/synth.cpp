#include "fsgrid/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace prng {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint32_t lat_idx, std::uint32_t lon_idx) {
  return splitmix64(splitmix64(splitmix64(seed) ^ lat_idx) ^ lon_idx);
}

double uniform01(std::uint64_t raw) {
  // 52 bits + half-step: every result is exactly representable and strictly
  // inside (0, 1) even for the extreme raw values.
  return (static_cast<double>(raw >> 12) + 0.5) * 0x1.0p-52;
}

// AS241 (PPND16): double-precision rational approximations to the quantile
// function of the standard normal distribution.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw BadParameters("inverse_normal_cdf: p must lie strictly inside (0, 1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

}  // namespace prng

namespace {

constexpr std::uint32_t kSharedStream = 0xFFFFFFFFu;

double next_normal(std::mt19937_64& rng) {
  return prng::inverse_normal_cdf(prng::uniform01(rng()));
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw BadParameters(std::string("generator spec: ") + what);
}

// Smooth fixed spatial pattern, normalized to unit Euclidean norm; no RNG so
// the rank-1 structure is exactly reproducible.
std::vector<double> rank1_pattern(std::size_t nlat, std::size_t nlon) {
  std::vector<double> v(nlat * nlon);
  double ss = 0.0;
  for (std::size_t i = 0; i < nlat; ++i) {
    for (std::size_t j = 0; j < nlon; ++j) {
      const double a = std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                static_cast<double>(nlon));
      const double b = std::sin(std::numbers::pi * static_cast<double>(i + 1) /
                                static_cast<double>(nlat + 1));
      const double val = 1.0 + 0.5 * a * b;
      v[i * nlon + j] = val;
      ss += val * val;
    }
  }
  const double norm = std::sqrt(ss);
  for (double& x : v) x /= norm;
  return v;
}

std::vector<double> location_series(const GeneratorSpec& spec, const TimeAxis& axis,
                                    std::uint32_t lat_idx, std::uint32_t lon_idx) {
  std::mt19937_64 rng(prng::stream_seed(spec.seed, lat_idx, lon_idx));
  std::vector<double> out(axis.size());
  switch (spec.kind) {
    case GeneratorKind::gaussian:
      for (auto& v : out) v = spec.mean + spec.sigma * next_normal(rng);
      break;
    case GeneratorKind::gaussian_mixture_2:
      for (auto& v : out) {
        const double u = prng::uniform01(rng());
        const double z = next_normal(rng);
        const double centre = u < spec.weight ? spec.separation / 2.0 : -spec.separation / 2.0;
        v = spec.mean + centre + spec.sigma * z;
      }
      break;
    case GeneratorKind::variance_switch:
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double s = axis[k] < spec.switch_date ? spec.sigma : spec.sigma2;
        out[k] = spec.mean + s * next_normal(rng);
      }
      break;
    case GeneratorKind::rank1_field:
      throw BadParameters("rank1_field generates whole fields, not single series");
  }
  return out;
}

}  // namespace

GeneratorKind generator_kind_from_string(std::string_view name) {
  if (name == "gaussian") return GeneratorKind::gaussian;
  if (name == "gaussian_mixture_2") return GeneratorKind::gaussian_mixture_2;
  if (name == "variance_switch") return GeneratorKind::variance_switch;
  if (name == "rank1_field") return GeneratorKind::rank1_field;
  throw BadParameters("unknown generator kind: " + std::string(name));
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::gaussian:
      return "gaussian";
    case GeneratorKind::gaussian_mixture_2:
      return "gaussian_mixture_2";
    case GeneratorKind::variance_switch:
      return "variance_switch";
    case GeneratorKind::rank1_field:
      return "rank1_field";
  }
  return "unknown";
}

void GeneratorSpec::validate() const {
  require_finite(mean, "mean must be finite");
  switch (kind) {
    case GeneratorKind::gaussian:
      if (!(sigma > 0.0)) throw BadParameters("generator spec: sigma must be positive");
      break;
    case GeneratorKind::gaussian_mixture_2:
      if (!(sigma > 0.0)) throw BadParameters("generator spec: sigma must be positive");
      if (!(separation >= 0.0)) throw BadParameters("generator spec: separation must be >= 0");
      require_finite(separation, "separation must be finite");
      if (!(weight > 0.0 && weight < 1.0)) {
        throw BadParameters("generator spec: mixture weight must lie in (0, 1)");
      }
      break;
    case GeneratorKind::variance_switch:
      if (!(sigma > 0.0) || !(sigma2 > 0.0)) {
        throw BadParameters("generator spec: both sigmas must be positive");
      }
      break;
    case GeneratorKind::rank1_field:
      require_finite(amplitude, "amplitude must be finite");
      require_finite(trend_per_year, "trend_per_year must be finite");
      if (!(noise_scale >= 0.0)) throw BadParameters("generator spec: noise_scale must be >= 0");
      require_finite(noise_scale, "noise_scale must be finite");
      break;
  }
}

std::vector<double> gen_series(const GeneratorSpec& spec, const TimeAxis& axis) {
  spec.validate();
  if (axis.empty()) throw BadParameters("gen_series: empty time axis");
  return location_series(spec, axis, 0, 0);
}

FieldGrid gen_field(const GeneratorSpec& spec, std::vector<double> latitudes,
                    std::vector<double> longitudes, const TimeAxis& axis) {
  spec.validate();
  if (axis.empty()) throw BadParameters("gen_field: empty time axis");
  if (latitudes.empty() || longitudes.empty()) {
    throw BadParameters("gen_field: coordinate axes must be non-empty");
  }

  FieldGrid g;
  g.latitudes = std::move(latitudes);
  g.longitudes = std::move(longitudes);
  g.time_axis = axis;
  const std::size_t nlat = g.nlat();
  const std::size_t nlon = g.nlon();
  const std::size_t ntime = g.ntime();
  g.values.resize(nlat * nlon * ntime);
  g.valid.assign(g.values.size(), 1);

  if (spec.kind == GeneratorKind::rank1_field) {
    std::mt19937_64 shared(prng::stream_seed(spec.seed, kSharedStream, kSharedStream));
    std::vector<double> gt(ntime);
    for (std::size_t k = 0; k < ntime; ++k) {
      const double years = axis[k].years_since(axis.front());
      gt[k] = spec.amplitude * next_normal(shared) + spec.trend_per_year * years;
    }
    const std::vector<double> pattern = rank1_pattern(nlat, nlon);
    for (std::size_t i = 0; i < nlat; ++i) {
      for (std::size_t j = 0; j < nlon; ++j) {
        const double v = pattern[i * nlon + j];
        double* series = &g.values[g.index(i, j, 0)];
        if (spec.noise_scale > 0.0) {
          std::mt19937_64 rng(prng::stream_seed(spec.seed, static_cast<std::uint32_t>(i),
                                                static_cast<std::uint32_t>(j)));
          for (std::size_t k = 0; k < ntime; ++k) {
            series[k] = spec.mean + gt[k] * v + spec.noise_scale * next_normal(rng);
          }
        } else {
          for (std::size_t k = 0; k < ntime; ++k) series[k] = spec.mean + gt[k] * v;
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < nlat; ++i) {
      for (std::size_t j = 0; j < nlon; ++j) {
        const std::vector<double> series = location_series(
            spec, axis, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        std::copy(series.begin(), series.end(), g.values.begin() +
                  static_cast<std::ptrdiff_t>(g.index(i, j, 0)));
      }
    }
  }
  g.validate();
  return g;
}

}  // namespace fsgrid
