#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsgrid/analysis_stats.hpp"
#include "fsgrid/config.hpp"
#include "fsgrid/eof.hpp"
#include "fsgrid/errors.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/report.hpp"
#include "fsgrid/synth.hpp"
#include "fsgrid/version.hpp"

namespace fs = std::filesystem;
using namespace fsgrid;

namespace {

int exit_code(ErrorCategory cat) {
  switch (cat) {
    case ErrorCategory::io: return 3;
    case ErrorCategory::parse: return 4;
    case ErrorCategory::schema: return 5;
    case ErrorCategory::degenerate: return 6;
    case ErrorCategory::upstream_missing: return 7;
    case ErrorCategory::parameter: return 8;
    case ErrorCategory::internal: return 9;
  }
  return 9;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

fs::path require_outdir(const RunConfig& cfg) {
  if (cfg.outdir.empty()) throw BadParameters("--outdir is required");
  fs::path dir(cfg.outdir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

/// Resolves the MeasureField written by a previous analyze run. `input` may
/// name the .fsm header directly or the directory that holds it.
fs::path resolve_measure_input(const RunConfig& cfg, bool prefer_standardized,
                               RunManifest& manifest) {
  if (cfg.input.empty()) throw BadParameters("--input is required (analyze output)");
  const fs::path in(cfg.input);
  if (fs::is_directory(in)) {
    if (prefer_standardized) {
      const fs::path z = in / "measures_z.fsm";
      if (fs::exists(z)) return z;
      const fs::path raw = in / "measures.fsm";
      if (fs::exists(raw)) {
        manifest.add_note("standardized measures absent; using raw measures");
        return raw;
      }
    } else {
      const fs::path raw = in / "measures.fsm";
      if (fs::exists(raw)) return raw;
    }
    throw MissingUpstream("no measure field found under '" + in.string() +
                          "'; run analyze first");
  }
  if (!fs::exists(in)) {
    throw MissingUpstream("measure field '" + in.string() + "' does not exist");
  }
  return in;
}

int cmd_analyze(const RunConfig& cfg) {
  Timer timer;
  if (cfg.input.empty()) throw BadParameters("--input is required");
  const FieldGrid grid = cfg.format == GridFormat::native
                             ? load_grid(cfg.input, GridFormat::native)
                             : import_grid_csv(cfg.input);

  const MeasureField raw = analyze_grid(grid, cfg.window, cfg.quadrature, cfg.workers);

  RunManifest manifest;
  manifest.set_config(cfg.echo());

  std::size_t missing_cells = 0;
  std::size_t dead_locations = 0;
  for (std::size_t loc = 0; loc < raw.nlat() * raw.nlon(); ++loc) {
    std::size_t bad = 0;
    for (std::size_t w = 0; w < raw.nwindow(); ++w) {
      if (!raw.valid[loc * raw.nwindow() + w]) ++bad;
    }
    missing_cells += bad;
    if (bad == raw.nwindow()) ++dead_locations;
  }
  manifest.add_note("windows: " + std::to_string(raw.nwindow()));
  manifest.add_note("missing cells: " + std::to_string(missing_cells));
  manifest.add_note("all-missing locations: " + std::to_string(dead_locations));

  const fs::path dir = require_outdir(cfg);
  save_measure_field(raw, dir / "measures.fsm");
  manifest.add_file(dir / "measures.fsm");
  manifest.add_file(dir / "measures.bin");
  for (const std::string& m : cfg.measures) {
    const fs::path csv = dir / ("measure_" + m + ".csv");
    write_measure_csv(raw, m, csv);
    manifest.add_file(csv);
  }

  if (cfg.standardize) {
    const MeasureField z = standardize_field(raw);
    save_measure_field(z, dir / "measures_z.fsm");
    manifest.add_file(dir / "measures_z.fsm");
    manifest.add_file(dir / "measures_z.bin");
    for (const std::string& m : cfg.measures) {
      const fs::path csv = dir / ("measure_" + m + "_z.csv");
      write_measure_csv(z, m, csv);
      manifest.add_file(csv);
    }
  }

  manifest.set_elapsed_seconds(timer.seconds());
  manifest.write(dir / "manifest.txt");
  return 0;
}

int cmd_hovmoller(const RunConfig& cfg) {
  Timer timer;
  RunManifest manifest;
  manifest.set_config(cfg.echo());
  const fs::path source = resolve_measure_input(cfg, /*prefer_standardized=*/true, manifest);
  const MeasureField field = load_measure_field(source);
  manifest.add_note("source: " + source.filename().string());

  const fs::path dir = require_outdir(cfg);
  for (const std::string& m : cfg.measures) {
    const HovmollerTable table = hovmoller(field, m, cfg.region);
    std::string name = "hovmoller_" + m;
    if (cfg.region) name += "_region" + std::to_string(*cfg.region);
    const fs::path csv = dir / (name + ".csv");
    write_hovmoller_csv(table, csv);
    manifest.add_file(csv);
  }
  manifest.set_elapsed_seconds(timer.seconds());
  manifest.write(dir / "hovmoller_manifest.txt");
  return 0;
}

int cmd_eof(const RunConfig& cfg) {
  Timer timer;
  RunManifest manifest;
  manifest.set_config(cfg.echo());
  const fs::path source = resolve_measure_input(cfg, /*prefer_standardized=*/true, manifest);
  const MeasureField field = load_measure_field(source);
  manifest.add_note("source: " + source.filename().string());
  if (cfg.modes < 1) throw BadParameters("--modes must be at least 1");

  const fs::path dir = require_outdir(cfg);
  for (const std::string& m : cfg.measures) {
    const EofInput input = to_eof_matrix(field, m, cfg.latitude_weighting);
    if (!input.dropped_locations.empty()) {
      manifest.add_note(m + ": dropped " + std::to_string(input.dropped_locations.size()) +
                        " incomplete locations of " +
                        std::to_string(field.nlat() * field.nlon()));
    }
    const EofResult result = decompose(input.matrix);
    int k_out = cfg.modes;
    if (k_out > result.modes()) {
      k_out = result.modes();
      manifest.add_note(m + ": requested " + std::to_string(cfg.modes) +
                        " modes, only " + std::to_string(k_out) + " available");
    }

    EofReport report;
    report.row_locations = input.row_locations;
    report.window_end_dates = input.matrix.time_ids;
    double total = 0.0;
    for (int k = 0; k < result.modes(); ++k) total += result.eigenvalues(k);
    const Date fit_start = cfg.start_date.value_or(report.window_end_dates.front());
    for (int k = 0; k < k_out; ++k) {
      report.eigenvalues.push_back(result.eigenvalues(k));
      report.explained.push_back(total > 0.0 ? result.eigenvalues(k) / total : 0.0);
      std::vector<double> eof_row(result.eofs.rows());
      for (Eigen::Index r = 0; r < result.eofs.rows(); ++r) eof_row[r] = result.eofs(r, k);
      report.eof_rows.push_back(std::move(eof_row));
      std::vector<double> pc_row(result.pcs.cols());
      for (Eigen::Index t = 0; t < result.pcs.cols(); ++t) pc_row[t] = result.pcs(k, t);
      try {
        report.trends.push_back(
            linear_fit(report.window_end_dates, pc_row, fit_start));
        report.trend_modes.push_back(k + 1);
      } catch (const Error& e) {
        manifest.add_note(m + ": trend fit skipped for mode " + std::to_string(k + 1) +
                          " (" + e.what() + ")");
      }
      report.pc_rows.push_back(std::move(pc_row));
    }

    const fs::path eig = dir / ("eigenvalues_" + m + ".csv");
    const fs::path map = dir / ("eof_map_" + m + ".csv");
    const fs::path pc = dir / ("pc_" + m + ".csv");
    const fs::path trend = dir / ("trend_" + m + ".csv");
    write_eigenvalue_csv(report, eig);
    write_eof_map_csv(report, field, map);
    write_pc_csv(report, pc);
    write_trend_csv(report, trend);
    for (const fs::path& p : {eig, map, pc, trend}) manifest.add_file(p);
  }
  manifest.set_elapsed_seconds(timer.seconds());
  manifest.write(dir / "eof_manifest.txt");
  return 0;
}

int cmd_fsip(const RunConfig& cfg, const std::vector<std::string>& location_args) {
  Timer timer;
  RunManifest manifest;
  manifest.set_config(cfg.echo());
  // trajectories live in the raw (N, I) plane, so never use the z-scored field
  const fs::path source = resolve_measure_input(cfg, /*prefer_standardized=*/false, manifest);
  const MeasureField field = load_measure_field(source);
  manifest.add_note("source: " + source.filename().string());

  std::vector<std::size_t> locations;
  if (location_args.empty()) {
    for (std::size_t loc = 0; loc < field.nlat() * field.nlon(); ++loc) {
      locations.push_back(loc);
    }
  } else {
    for (const std::string& arg : location_args) {
      const auto comma = arg.find(',');
      if (comma == std::string::npos) {
        throw BadParameters("--location expects 'lat,lon', got '" + arg + "'");
      }
      const double lat = parse_double(trim(arg.substr(0, comma)));
      const double lon = parse_double(trim(arg.substr(comma + 1)));
      const auto lat_it = std::find(field.latitudes.begin(), field.latitudes.end(), lat);
      const auto lon_it = std::find(field.longitudes.begin(), field.longitudes.end(), lon);
      if (lat_it == field.latitudes.end() || lon_it == field.longitudes.end()) {
        throw UnknownLocation("location (" + arg + ") is not a grid point");
      }
      const std::size_t i = static_cast<std::size_t>(lat_it - field.latitudes.begin());
      const std::size_t j = static_cast<std::size_t>(lon_it - field.longitudes.begin());
      locations.push_back(i * field.nlon() + j);
    }
  }

  const fs::path dir = require_outdir(cfg);
  const fs::path csv = dir / "fsip.csv";
  write_fsip_csv(field, locations, csv);
  manifest.add_file(csv);
  manifest.add_note("locations: " + std::to_string(locations.size()));
  manifest.set_elapsed_seconds(timer.seconds());
  manifest.write(dir / "fsip_manifest.txt");
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  Timer timer;
  if (cfg.nlat < 1 || cfg.nlon < 1) throw BadParameters("nlat/nlon must be positive");
  std::vector<double> lats, lons;
  if (cfg.nlat == 1) {
    lats.push_back(cfg.lat_min);
  } else {
    const double step = (cfg.lat_max - cfg.lat_min) / (cfg.nlat - 1);
    if (step <= 0.0) throw BadParameters("lat_max must exceed lat_min");
    for (int i = 0; i < cfg.nlat; ++i) lats.push_back(cfg.lat_min + step * i);
  }
  for (int j = 0; j < cfg.nlon; ++j) lons.push_back(360.0 * j / cfg.nlon);
  const TimeAxis axis = TimeAxis::daily(cfg.first_date, cfg.last_date);

  const FieldGrid grid = gen_field(cfg.generator, lats, lons, axis);

  const fs::path dir = require_outdir(cfg);
  fs::path out = dir / cfg.output_name;
  if (out.extension() != ".fsg") out.replace_extension(".fsg");
  save_grid(grid, out);

  RunManifest manifest;
  manifest.set_config(cfg.echo());
  manifest.add_note("generator: " + std::string(to_string(cfg.generator.kind)) +
                    " seed " + std::to_string(cfg.generator.seed));
  manifest.add_file(out);
  manifest.add_file(fs::path(out).replace_extension(".bin"));
  manifest.set_elapsed_seconds(timer.seconds());
  manifest.write(dir / "manifest.txt");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher-Shannon complexity analysis of gridded scalar fields"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_file, input, outdir, format_name, measures_arg, start_date_arg;
  std::string kind_arg, first_date_arg, last_date_arg, switch_date_arg, output_name;
  int workers = 0, modes = 0, region = 0, width_months = 0, step_months = 0;
  int min_valid = 0, num_points = 0, nlat = 0, nlon = 0;
  double lat_min = 0, lat_max = 0, mean = 0, sigma = 0, sigma2 = 0, separation = 0;
  double weight = 0, amplitude = 0, trend_per_year = 0, noise_scale = 0;
  std::uint64_t seed = 0;
  bool standardize_on = false, standardize_off = false, lat_weight = false;
  std::vector<std::string> locations;

  auto* o_config = app.add_option("--config", config_file, "key: value settings file");
  auto* o_input = app.add_option("--input", input, "input grid, measure field, or directory");
  auto* o_outdir = app.add_option("--outdir", outdir, "output directory");
  auto* o_format = app.add_option("--format", format_name, "input grid format: native or csv");
  auto* o_workers = app.add_option("--workers", workers, "worker threads (0 = auto)");
  auto* o_measures = app.add_option("--measures", measures_arg,
                                    "comma- or space-separated subset of sep,fim,fsc");
  auto* o_region = app.add_option("--region", region, "restrict to this region-mask label");
  auto* o_modes = app.add_option("--modes", modes, "number of EOF modes to export");
  auto* o_start = app.add_option("--start-date", start_date_arg, "trend fit start (YYYY-MM-DD)");
  auto* o_seed = app.add_option("--seed", seed, "generator seed");
  auto* o_std_on = app.add_flag("--standardize", standardize_on, "write z-scored outputs (default)");
  auto* o_std_off = app.add_flag("--no-standardize", standardize_off, "skip z-scored outputs");
  auto* o_lat_w = app.add_flag("--latitude-weighting", lat_weight,
                               "weight EOF rows by sqrt(cos(latitude))");
  auto* o_width = app.add_option("--width-months", width_months, "window width in months");
  auto* o_step = app.add_option("--step-months", step_months, "window step in months");
  auto* o_min_valid = app.add_option("--min-valid", min_valid, "min valid samples per window");
  auto* o_points = app.add_option("--num-points", num_points, "quadrature grid size");
  auto* o_loc = app.add_option("--location", locations, "grid point 'lat,lon' (repeatable)");
  auto* o_kind = app.add_option("--kind", kind_arg,
                                "generator: gaussian, gaussian_mixture_2, variance_switch, rank1_field");
  auto* o_nlat = app.add_option("--nlat", nlat, "synthetic grid latitude count");
  auto* o_nlon = app.add_option("--nlon", nlon, "synthetic grid longitude count");
  auto* o_lat_min = app.add_option("--lat-min", lat_min, "southernmost latitude");
  auto* o_lat_max = app.add_option("--lat-max", lat_max, "northernmost latitude");
  auto* o_first = app.add_option("--first-date", first_date_arg, "axis start (YYYY-MM-DD)");
  auto* o_last = app.add_option("--last-date", last_date_arg, "axis end (YYYY-MM-DD)");
  auto* o_mean = app.add_option("--mean", mean, "generator mean");
  auto* o_sigma = app.add_option("--sigma", sigma, "generator sigma");
  auto* o_sigma2 = app.add_option("--sigma2", sigma2, "post-switch sigma");
  auto* o_sep = app.add_option("--separation", separation, "mixture mode separation");
  auto* o_weight = app.add_option("--weight", weight, "mixture first-mode weight");
  auto* o_switch = app.add_option("--switch-date", switch_date_arg, "variance switch date");
  auto* o_amp = app.add_option("--amplitude", amplitude, "rank-1 coefficient amplitude");
  auto* o_trend = app.add_option("--trend-per-year", trend_per_year, "rank-1 coefficient trend");
  auto* o_noise = app.add_option("--noise-scale", noise_scale, "rank-1 additive noise scale");
  auto* o_outname = app.add_option("--output-name", output_name, "synthetic grid file name");

  auto* sub_analyze = app.add_subcommand("analyze", "windowed SEP/FIM/FSC over a grid");
  auto* sub_hov = app.add_subcommand("hovmoller", "latitude-by-time means of a measure field");
  auto* sub_eof = app.add_subcommand("eof", "EOF decomposition of a measure field");
  auto* sub_fsip = app.add_subcommand("fsip", "Fisher-Shannon plane trajectories");
  auto* sub_synth = app.add_subcommand("synth", "write a deterministic synthetic grid");
  for (CLI::App* sub : {sub_analyze, sub_hov, sub_eof, sub_fsip, sub_synth}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (o_config->count() > 0) cfg.apply_file(config_file);

    // flags override whatever the file set
    KvBlock overrides;
    if (o_input->count()) overrides.add("input", input);
    if (o_outdir->count()) overrides.add("outdir", outdir);
    if (o_format->count()) overrides.add("format", format_name);
    if (o_workers->count()) overrides.add("workers", std::to_string(workers));
    if (o_measures->count()) {
      std::replace(measures_arg.begin(), measures_arg.end(), ',', ' ');
      overrides.add("measures", measures_arg);
    }
    if (o_region->count()) overrides.add("region", std::to_string(region));
    if (o_modes->count()) overrides.add("modes", std::to_string(modes));
    if (o_start->count()) overrides.add("start_date", start_date_arg);
    if (o_seed->count()) overrides.add("seed", std::to_string(seed));
    if (o_lat_w->count()) overrides.add("latitude_weighting", "true");
    if (o_width->count()) overrides.add("width_months", std::to_string(width_months));
    if (o_step->count()) overrides.add("step_months", std::to_string(step_months));
    if (o_min_valid->count()) overrides.add("min_valid", std::to_string(min_valid));
    if (o_points->count()) overrides.add("num_points", std::to_string(num_points));
    if (o_kind->count()) overrides.add("kind", kind_arg);
    if (o_nlat->count()) overrides.add("nlat", std::to_string(nlat));
    if (o_nlon->count()) overrides.add("nlon", std::to_string(nlon));
    if (o_lat_min->count()) overrides.add("lat_min", format_double(lat_min));
    if (o_lat_max->count()) overrides.add("lat_max", format_double(lat_max));
    if (o_first->count()) overrides.add("first_date", first_date_arg);
    if (o_last->count()) overrides.add("last_date", last_date_arg);
    if (o_mean->count()) overrides.add("mean", format_double(mean));
    if (o_sigma->count()) overrides.add("sigma", format_double(sigma));
    if (o_sigma2->count()) overrides.add("sigma2", format_double(sigma2));
    if (o_sep->count()) overrides.add("separation", format_double(separation));
    if (o_weight->count()) overrides.add("weight", format_double(weight));
    if (o_switch->count()) overrides.add("switch_date", switch_date_arg);
    if (o_amp->count()) overrides.add("amplitude", format_double(amplitude));
    if (o_trend->count()) overrides.add("trend_per_year", format_double(trend_per_year));
    if (o_noise->count()) overrides.add("noise_scale", format_double(noise_scale));
    if (o_outname->count()) overrides.add("output_name", output_name);
    cfg.apply(overrides);
    if (o_std_on->count() || o_std_off->count()) cfg.standardize = !standardize_off;

    cfg.window.validate();
    cfg.quadrature.validate();

    if (sub_analyze->parsed()) return cmd_analyze(cfg);
    if (sub_hov->parsed()) return cmd_hovmoller(cfg);
    if (sub_eof->parsed()) return cmd_eof(cfg);
    if (sub_fsip->parsed()) return cmd_fsip(cfg, locations);
    if (sub_synth->parsed()) return cmd_synth(cfg);
    throw BadParameters("no subcommand selected");
  } catch (const Error& e) {
    std::cerr << "error: " << category_name(e.category()) << ": " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return exit_code(ErrorCategory::internal);
  }
}
