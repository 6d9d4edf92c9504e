#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fsgrid/analysis_stats.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/kv.hpp"

namespace fsgrid {

/// Long-format CSV of one measure: "lat,lon,date,value", empty value for
/// missing cells. The layout matches what import_grid_csv reads.
void write_measure_csv(const MeasureField& field, const std::string& measure,
                       const std::filesystem::path& path);

/// "lat,date,value" rows, empty value for missing cells.
void write_hovmoller_csv(const HovmollerTable& table, const std::filesystem::path& path);

/// "lat,lon,date,sep,fim,fsc" rows for the selected locations (indices into
/// the lat-major location ordering), one row per window; missing windows keep
/// the date with empty measure fields.
void write_fsip_csv(const MeasureField& field, const std::vector<std::size_t>& locations,
                    const std::filesystem::path& path);

struct EofReport {
  std::vector<double> eigenvalues;              // descending
  std::vector<double> explained;                // fraction of total variance
  std::vector<std::vector<double>> eof_rows;    // per mode, one value per kept row
  std::vector<std::vector<double>> pc_rows;     // per mode, one value per window
  std::vector<std::size_t> row_locations;       // kept flat location indices
  std::vector<Date> window_end_dates;
  std::vector<int> trend_modes;                 // 1-based, parallel to trends
  std::vector<TrendFit> trends;
};

void write_eigenvalue_csv(const EofReport& report, const std::filesystem::path& path);
void write_eof_map_csv(const EofReport& report, const MeasureField& field,
                       const std::filesystem::path& path);
void write_pc_csv(const EofReport& report, const std::filesystem::path& path);
void write_trend_csv(const EofReport& report, const std::filesystem::path& path);

/// Accumulates the run record: effective config, free-form notes, wall time,
/// and a checksummed inventory of every output file.
class RunManifest {
 public:
  void set_config(const KvBlock& echo) { config_ = echo; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  void add_file(const std::filesystem::path& path);  // IoError; records crc32 + size
  void set_elapsed_seconds(double s) { elapsed_ = s; }

  void write(const std::filesystem::path& path) const;

 private:
  struct Entry {
    std::string name;
    std::uint32_t crc = 0;
    std::uintmax_t size = 0;
  };
  KvBlock config_;
  std::vector<std::string> notes_;
  std::vector<Entry> files_;
  double elapsed_ = 0.0;
};

std::uint32_t file_crc32(const std::filesystem::path& path);  // IoError

}  // namespace fsgrid
