#include "fsgrid/report.hpp"

#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fsgrid/errors.hpp"
#include "fsgrid/version.hpp"

namespace fsgrid {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed on '" + path.string() + "'");
}

void append_value(std::string& line, const double* values, const std::uint8_t* valid,
                  std::size_t idx) {
  line += ',';
  if (valid[idx]) line += format_double(values[idx]);
}

}  // namespace

void write_measure_csv(const MeasureField& field, const std::string& measure,
                       const std::filesystem::path& path) {
  const std::vector<double>& values = field.measure(measure);
  std::ofstream out = open_out(path);
  out << "lat,lon,date,value\n";
  std::string line;
  for (std::size_t i = 0; i < field.nlat(); ++i) {
    for (std::size_t j = 0; j < field.nlon(); ++j) {
      for (std::size_t w = 0; w < field.nwindow(); ++w) {
        const std::size_t idx = field.index(i, j, w);
        line.clear();
        line += format_double(field.latitudes[i]);
        line += ',';
        line += format_double(field.longitudes[j]);
        line += ',';
        line += field.window_end_dates[w].iso();
        append_value(line, values.data(), field.valid.data(), idx);
        line += '\n';
        out << line;
      }
    }
  }
  finish(out, path);
}

void write_hovmoller_csv(const HovmollerTable& table, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "lat,date,value\n";
  for (std::size_t i = 0; i < table.latitudes.size(); ++i) {
    for (std::size_t w = 0; w < table.window_end_dates.size(); ++w) {
      const std::size_t idx = table.index(i, w);
      out << format_double(table.latitudes[i]) << ',' << table.window_end_dates[w].iso() << ',';
      if (table.valid[idx]) out << format_double(table.means[idx]);
      out << '\n';
    }
  }
  finish(out, path);
}

void write_fsip_csv(const MeasureField& field, const std::vector<std::size_t>& locations,
                    const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "lat,lon,date,sep,fim,fsc\n";
  for (const std::size_t loc : locations) {
    const std::size_t i = loc / field.nlon();
    const std::size_t j = loc % field.nlon();
    if (i >= field.nlat()) throw UnknownLocation("fsip: location index out of range");
    std::string line;
    for (std::size_t w = 0; w < field.nwindow(); ++w) {
      const std::size_t idx = field.index(i, j, w);
      line.clear();
      line += format_double(field.latitudes[i]);
      line += ',';
      line += format_double(field.longitudes[j]);
      line += ',';
      line += field.window_end_dates[w].iso();
      append_value(line, field.sep.data(), field.valid.data(), idx);
      append_value(line, field.fim.data(), field.valid.data(), idx);
      append_value(line, field.fsc.data(), field.valid.data(), idx);
      line += '\n';
      out << line;
    }
  }
  finish(out, path);
}

void write_eigenvalue_csv(const EofReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "mode,eigenvalue,explained_variance\n";
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    out << (k + 1) << ',' << format_double(report.eigenvalues[k]) << ','
        << format_double(report.explained[k]) << '\n';
  }
  finish(out, path);
}

void write_eof_map_csv(const EofReport& report, const MeasureField& field,
                       const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "mode,lat,lon,value\n";
  for (std::size_t k = 0; k < report.eof_rows.size(); ++k) {
    const std::vector<double>& row = report.eof_rows[k];
    for (std::size_t r = 0; r < row.size(); ++r) {
      const std::size_t loc = report.row_locations[r];
      const std::size_t i = loc / field.nlon();
      const std::size_t j = loc % field.nlon();
      out << (k + 1) << ',' << format_double(field.latitudes[i]) << ','
          << format_double(field.longitudes[j]) << ',' << format_double(row[r]) << '\n';
    }
  }
  finish(out, path);
}

void write_pc_csv(const EofReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "mode,date,value\n";
  for (std::size_t k = 0; k < report.pc_rows.size(); ++k) {
    for (std::size_t w = 0; w < report.pc_rows[k].size(); ++w) {
      out << (k + 1) << ',' << report.window_end_dates[w].iso() << ','
          << format_double(report.pc_rows[k][w]) << '\n';
    }
  }
  finish(out, path);
}

void write_trend_csv(const EofReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "mode,start_date,slope_per_year,intercept,r_squared\n";
  for (std::size_t k = 0; k < report.trends.size(); ++k) {
    const TrendFit& t = report.trends[k];
    out << report.trend_modes[k] << ',' << t.start_date.iso() << ','
        << format_double(t.slope) << ',' << format_double(t.intercept) << ','
        << format_double(t.r_squared) << '\n';
  }
  finish(out, path);
}

std::uint32_t file_crc32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for checksumming");
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const std::streamsize got = in.gcount();
    if (got > 0) {
      crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()),
                  static_cast<uInt>(got));
    }
  }
  return static_cast<std::uint32_t>(crc);
}

void RunManifest::add_file(const std::filesystem::path& path) {
  Entry e;
  e.name = path.filename().string();
  e.crc = file_crc32(path);
  e.size = std::filesystem::file_size(path);
  files_.push_back(std::move(e));
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ostringstream text;
  text << "fsgrid manifest\n";
  text << "version: " << kVersion << "\n";
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  text << "created: " << stamp << "\n";
  text << "elapsed_seconds: " << format_double(elapsed_) << "\n";
  text << "\n[config]\n" << config_.serialize();
  text << "\n[notes]\n";
  for (const std::string& n : notes_) text << "- " << n << "\n";
  text << "\n[files]\n";
  for (const Entry& e : files_) {
    char crc_hex[16];
    std::snprintf(crc_hex, sizeof crc_hex, "%08x", e.crc);
    text << crc_hex << ' ' << e.size << ' ' << e.name << '\n';
  }
  std::ofstream out = open_out(path);
  out << text.str();
  finish(out, path);
}

}  // namespace fsgrid
