#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fsgrid/eof.hpp"
#include "fsgrid/windows.hpp"

namespace fsgrid {

// Gridded space-time scalar field. values/valid are flat (lat, lon, time)
// row-major arrays: index = (i * nlon + j) * ntime + k, so each location's
// series is contiguous. Missing cells carry NaN in values and 0 in valid;
// missingness is always the mask, never a sentinel comparison.
struct FieldGrid {
  std::vector<double> latitudes;
  std::vector<double> longitudes;
  TimeAxis time_axis;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
  std::string units;
  std::vector<int> region_mask;  // nlat*nlon labels; empty = no mask

  std::size_t nlat() const { return latitudes.size(); }
  std::size_t nlon() const { return longitudes.size(); }
  std::size_t ntime() const { return time_axis.size(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nlon() + j) * ntime() + k;
  }

  void validate() const;  // throws SchemaError / BadParameters
};

// Windowed measure triple on the same horizontal grid, (lat, lon, window)
// layout as FieldGrid. One shared validity mask: a window estimate either
// yields all three measures or none.
struct MeasureField {
  std::vector<double> latitudes;
  std::vector<double> longitudes;
  std::vector<Date> window_end_dates;
  std::vector<double> sep;
  std::vector<double> fim;
  std::vector<double> fsc;
  std::vector<std::uint8_t> valid;
  bool standardized = false;
  std::vector<int> region_mask;

  std::size_t nlat() const { return latitudes.size(); }
  std::size_t nlon() const { return longitudes.size(); }
  std::size_t nwindow() const { return window_end_dates.size(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t w) const {
    return (i * nlon() + j) * nwindow() + w;
  }
  const std::vector<double>& measure(const std::string& name) const;  // UnknownMeasure

  void validate() const;
};

// Latitude-by-window means of one measure.
struct HovmollerTable {
  std::vector<double> latitudes;
  std::vector<Date> window_end_dates;
  std::vector<double> means;  // (lat, window) row-major
  std::vector<std::uint8_t> valid;
  std::string measure_name;
  std::optional<int> region_label;

  std::size_t index(std::size_t i, std::size_t w) const {
    return i * window_end_dates.size() + w;
  }
};

enum class GridFormat { native, csv };

// Native format: a text header of "key: value" lines next to a flat binary
// payload of little-endian 64-bit floats. Serialization is canonical: loading
// a saved file and saving it again reproduces the bytes exactly.
FieldGrid load_grid(const std::filesystem::path& path, GridFormat format);
void save_grid(const FieldGrid& grid, const std::filesystem::path& header_path);

// Long-format CSV with a mandatory "lat,lon,date,value" header row. Cells
// never mentioned stay missing; duplicate (lat, lon, date) rows are rejected.
FieldGrid import_grid_csv(const std::filesystem::path& path);

MeasureField load_measure_field(const std::filesystem::path& header_path);
void save_measure_field(const MeasureField& field, const std::filesystem::path& header_path);

// Windowed Fisher-Shannon estimation at every location. workers <= 0 picks a
// default; the schedule never changes the result.
MeasureField analyze_grid(const FieldGrid& grid, const WindowSpec& spec,
                          const QuadratureSpec& quad, int workers = 0);

// Per-location, per-measure z-score over windows. Locations whose series
// degenerate (under 2 usable windows or a zero-variance measure) come back
// fully missing rather than failing the whole field.
MeasureField standardize_field(const MeasureField& field);

// Mean over non-missing longitudes per (latitude, window), optionally
// restricted to cells whose region_mask equals `region`.
HovmollerTable hovmoller(const MeasureField& field, const std::string& measure,
                         std::optional<int> region = std::nullopt);

// MeasureField rows flattened for EOF analysis. Locations with any missing
// window are dropped and reported; row_locations[r] is the flat lat*nlon+lon
// cell behind matrix row r.
struct EofInput {
  SpaceTimeMatrix matrix;
  std::vector<std::size_t> row_locations;
  std::vector<std::size_t> dropped_locations;
};

EofInput to_eof_matrix(const MeasureField& field, const std::string& measure,
                       bool latitude_weighting = false);

}  // namespace fsgrid
