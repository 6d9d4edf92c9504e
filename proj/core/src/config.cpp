#include "fsgrid/config.hpp"

#include <string_view>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace {

Date parse_date_value(std::string_view key, const std::string& value) {
  const auto parsed = Date::try_parse(value);
  if (!parsed) throw ParseError("config key '" + std::string(key) + "': bad date '" + value + "'");
  return *parsed;
}

int to_int(std::string_view key, const std::string& value) {
  const std::int64_t v = parse_int(value);
  if (v < -(1LL << 31) || v > (1LL << 31)) {
    throw ParseError("config key '" + std::string(key) + "': out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<std::string> parse_measure_list(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& name : split_ws(text)) {
    if (name != "sep" && name != "fim" && name != "fsc") {
      throw ParseError("unknown measure '" + name + "' (expected sep, fim or fsc)");
    }
    for (const std::string& seen : out) {
      if (seen == name) throw ParseError("measure '" + name + "' listed twice");
    }
    out.push_back(name);
  }
  if (out.empty()) throw ParseError("empty measure list");
  return out;
}

void RunConfig::apply(const KvBlock& block) {
  for (const auto& [key, value] : block.entries()) {
    if (key == "input") {
      input = value;
    } else if (key == "format") {
      if (value == "native") {
        format = GridFormat::native;
      } else if (value == "csv") {
        format = GridFormat::csv;
      } else {
        throw ParseError("config key 'format': expected native or csv, got '" + value + "'");
      }
    } else if (key == "outdir") {
      outdir = value;
    } else if (key == "width_months") {
      window.width_months = to_int(key, value);
    } else if (key == "step_months") {
      window.step_months = to_int(key, value);
    } else if (key == "min_valid") {
      window.min_valid = to_int(key, value);
    } else if (key == "extension_factor") {
      quadrature.extension_factor = parse_double(value);
    } else if (key == "num_points") {
      quadrature.num_points = to_int(key, value);
    } else if (key == "density_floor") {
      quadrature.density_floor = parse_double(value);
    } else if (key == "measures") {
      measures = parse_measure_list(value);
    } else if (key == "region") {
      region = to_int(key, value);
    } else if (key == "modes") {
      modes = to_int(key, value);
    } else if (key == "start_date") {
      start_date = parse_date_value(key, value);
    } else if (key == "workers") {
      workers = to_int(key, value);
    } else if (key == "standardize") {
      standardize = parse_bool(value);
    } else if (key == "latitude_weighting") {
      latitude_weighting = parse_bool(value);
    } else if (key == "kind") {
      generator.kind = generator_kind_from_string(value);
    } else if (key == "mean") {
      generator.mean = parse_double(value);
    } else if (key == "sigma") {
      generator.sigma = parse_double(value);
    } else if (key == "separation") {
      generator.separation = parse_double(value);
    } else if (key == "weight") {
      generator.weight = parse_double(value);
    } else if (key == "sigma2") {
      generator.sigma2 = parse_double(value);
    } else if (key == "switch_date") {
      generator.switch_date = parse_date_value(key, value);
    } else if (key == "amplitude") {
      generator.amplitude = parse_double(value);
    } else if (key == "trend_per_year") {
      generator.trend_per_year = parse_double(value);
    } else if (key == "noise_scale") {
      generator.noise_scale = parse_double(value);
    } else if (key == "seed") {
      generator.seed = static_cast<std::uint64_t>(parse_int(value));
    } else if (key == "nlat") {
      nlat = to_int(key, value);
    } else if (key == "nlon") {
      nlon = to_int(key, value);
    } else if (key == "lat_min") {
      lat_min = parse_double(value);
    } else if (key == "lat_max") {
      lat_max = parse_double(value);
    } else if (key == "first_date") {
      first_date = parse_date_value(key, value);
    } else if (key == "last_date") {
      last_date = parse_date_value(key, value);
    } else if (key == "output_name") {
      output_name = value;
    } else {
      throw SchemaError("unrecognized config key '" + key + "'");
    }
  }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
  apply(KvBlock::load(path));
}

KvBlock RunConfig::echo() const {
  KvBlock b;
  b.add("input", input);
  b.add("format", format == GridFormat::native ? "native" : "csv");
  b.add("outdir", outdir);
  b.add("width_months", std::to_string(window.width_months));
  b.add("step_months", std::to_string(window.step_months));
  b.add("min_valid", std::to_string(window.min_valid));
  b.add("extension_factor", format_double(quadrature.extension_factor));
  b.add("num_points", std::to_string(quadrature.num_points));
  b.add("density_floor", format_double(quadrature.density_floor));
  std::string names;
  for (const std::string& m : measures) {
    if (!names.empty()) names += ' ';
    names += m;
  }
  b.add("measures", names);
  if (region) b.add("region", std::to_string(*region));
  b.add("modes", std::to_string(modes));
  if (start_date) b.add("start_date", start_date->iso());
  b.add("workers", std::to_string(workers));
  b.add("standardize", standardize ? "true" : "false");
  b.add("latitude_weighting", latitude_weighting ? "true" : "false");
  b.add("kind", std::string(to_string(generator.kind)));
  b.add("mean", format_double(generator.mean));
  b.add("sigma", format_double(generator.sigma));
  b.add("separation", format_double(generator.separation));
  b.add("weight", format_double(generator.weight));
  b.add("sigma2", format_double(generator.sigma2));
  b.add("switch_date", generator.switch_date.iso());
  b.add("amplitude", format_double(generator.amplitude));
  b.add("trend_per_year", format_double(generator.trend_per_year));
  b.add("noise_scale", format_double(generator.noise_scale));
  b.add("seed", std::to_string(generator.seed));
  b.add("nlat", std::to_string(nlat));
  b.add("nlon", std::to_string(nlon));
  b.add("lat_min", format_double(lat_min));
  b.add("lat_max", format_double(lat_max));
  b.add("first_date", first_date.iso());
  b.add("last_date", last_date.iso());
  b.add("output_name", output_name);
  return b;
}

}  // namespace fsgrid
