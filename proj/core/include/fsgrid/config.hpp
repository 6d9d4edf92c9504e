#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fsgrid/date.hpp"
#include "fsgrid/fisher_shannon.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/kv.hpp"
#include "fsgrid/synth.hpp"
#include "fsgrid/windows.hpp"

namespace fsgrid {

/// Effective settings of one CLI run. Assembled in three layers with
/// precedence flags > config file > defaults; the file uses the same
/// "key: value" dialect as the grid headers.
struct RunConfig {
  std::string input;
  GridFormat format = GridFormat::native;
  std::string outdir;

  WindowSpec window;
  QuadratureSpec quadrature;

  std::vector<std::string> measures{"sep", "fim", "fsc"};
  std::optional<int> region;
  int modes = 2;
  std::optional<Date> start_date;  // trend fits; default = first window
  int workers = 0;                 // 0 = all hardware threads
  bool standardize = true;
  bool latitude_weighting = false;

  // synth-only settings
  GeneratorSpec generator;
  int nlat = 2;
  int nlon = 2;
  double lat_min = -60.0;
  double lat_max = 60.0;
  Date first_date{2000, 1, 1};
  Date last_date{2005, 12, 31};
  std::string output_name = "synthetic.fsg";

  /// Applies recognized keys from a parsed block; an unrecognized key is a
  /// SchemaError so config typos fail loudly instead of silently using a
  /// default.
  void apply(const KvBlock& block);
  void apply_file(const std::filesystem::path& path);

  /// Canonical echo of every setting, for the run manifest.
  KvBlock echo() const;
};

std::vector<std::string> parse_measure_list(std::string_view text);  // ParseError

}  // namespace fsgrid
