#include "fsgrid/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "fsgrid/errors.hpp"
#include "fsgrid/kv.hpp"
#include "fsgrid/parallel.hpp"

namespace fsgrid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Single canonical NaN bit pattern so that saved payloads are byte-stable.
constexpr std::uint64_t kCanonicalNaNBits = 0x7FF8000000000000ULL;

constexpr std::string_view kGridFormatTag = "fsgrid-grid/1";
constexpr std::string_view kMeasureFormatTag = "fsgrid-measure/1";

void check_monotone(const std::vector<double>& xs, const char* what) {
  if (xs.empty()) throw SchemaError(std::string(what) + ": empty coordinate axis");
  if (xs.size() < 2) return;
  const bool increasing = xs[1] > xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const bool step_up = xs[i] > xs[i - 1];
    if (step_up != increasing || xs[i] == xs[i - 1]) {
      throw SchemaError(std::string(what) + ": coordinates must be strictly monotone");
    }
  }
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_double(xs[i]);
  }
  return out;
}

std::vector<double> parse_doubles(std::string_view s, std::size_t expect, const char* what) {
  const auto tokens = split_ws(s);
  if (tokens.size() != expect) {
    throw SchemaError(std::string(what) + ": expected " + std::to_string(expect) +
                      " entries, found " + std::to_string(tokens.size()));
  }
  std::vector<double> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_double(t));
  return out;
}

std::string dates_to_string(const std::vector<Date>& dates) {
  if (!dates.empty() &&
      days_between(dates.front(), dates.back()) + 1 == static_cast<std::int64_t>(dates.size())) {
    return "daily " + dates.front().iso() + " " + dates.back().iso();
  }
  std::string out = "list";
  for (const Date& d : dates) {
    out += ' ';
    out += d.iso();
  }
  return out;
}

std::vector<Date> dates_from_string(std::string_view s) {
  const auto tokens = split_ws(s);
  if (tokens.empty()) throw ParseError("date axis: empty specification");
  if (tokens.front() == "daily") {
    if (tokens.size() != 3) throw ParseError("date axis: daily needs start and end");
    std::vector<Date> out;
    const Date first = Date::parse(tokens[1]);
    const Date last = Date::parse(tokens[2]);
    if (last < first) throw ParseError("date axis: daily end before start");
    for (Date d = first; d <= last; d = d.add_days(1)) out.push_back(d);
    return out;
  }
  if (tokens.front() != "list") throw ParseError("date axis: expected 'daily' or 'list'");
  std::vector<Date> out;
  out.reserve(tokens.size() - 1);
  for (std::size_t i = 1; i < tokens.size(); ++i) out.push_back(Date::parse(tokens[i]));
  return out;
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) return bits;
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | ((bits >> (8 * i)) & 0xFFu);
  return out;
}

void write_payload(const std::filesystem::path& path,
                   const std::vector<const std::vector<double>*>& blocks,
                   const std::vector<std::uint8_t>& mask) {
  std::string buf;
  for (const auto* block : blocks) {
    for (std::size_t i = 0; i < block->size(); ++i) {
      std::uint64_t bits =
          mask[i] ? std::bit_cast<std::uint64_t>((*block)[i]) : kCanonicalNaNBits;
      bits = to_little_endian(bits);
      char raw[8];
      std::memcpy(raw, &bits, 8);
      buf.append(raw, 8);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open payload for writing: " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing payload: " + path.string());
}

std::vector<double> read_payload(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open payload: " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != count * 8) {
    throw SchemaError("payload size mismatch: expected " + std::to_string(count * 8) +
                      " bytes, found " + std::to_string(bytes) + " in " + path.string());
  }
  std::string buf(bytes, '\0');
  in.seekg(0);
  in.read(buf.data(), static_cast<std::streamsize>(bytes));
  if (!in) throw IoError("failed reading payload: " + path.string());

  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, buf.data() + i * 8, 8);
    out[i] = std::bit_cast<double>(to_little_endian(bits));
  }
  return out;
}

KvBlock load_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open header: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (trim(text).empty()) throw ParseError("empty header file: " + path.string());
  return KvBlock::parse(text);
}

void write_header(const KvBlock& block, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open header for writing: " + path.string());
  out << block.serialize();
  if (!out) throw IoError("failed writing header: " + path.string());
}

std::filesystem::path payload_path_for(const std::filesystem::path& header_path) {
  std::filesystem::path p = header_path;
  p.replace_extension(".bin");
  return p;
}

// Missing sentinel declared by the header; values equal to it (or any NaN for
// the "nan" sentinel) become masked.
struct Sentinel {
  bool is_nan = true;
  double value = 0.0;

  bool missing(double v) const { return is_nan ? std::isnan(v) : v == value; }
};

Sentinel parse_sentinel(const KvBlock& header) {
  Sentinel s;
  if (const std::string* raw = header.find("missing")) {
    if (*raw != "nan") {
      s.is_nan = false;
      s.value = parse_double(*raw);
    }
  }
  return s;
}

void apply_sentinel(const Sentinel& s, std::vector<double>& values,
                    std::vector<std::uint8_t>& mask) {
  mask.assign(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (s.missing(values[i])) {
      mask[i] = 0;
      values[i] = kNaN;
    }
  }
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<int> parse_ints(std::string_view s, std::size_t expect, const char* what) {
  const auto tokens = split_ws(s);
  if (tokens.size() != expect) {
    throw SchemaError(std::string(what) + ": expected " + std::to_string(expect) + " entries");
  }
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(static_cast<int>(parse_int(t)));
  return out;
}

FieldGrid load_grid_native(const std::filesystem::path& path) {
  const KvBlock header = load_header(path);
  if (header.get("format") != kGridFormatTag) {
    throw SchemaError("not a grid header: " + path.string());
  }
  if (header.get("byte_order") != "little") {
    throw SchemaError("unsupported byte order: " + header.get("byte_order"));
  }

  FieldGrid g;
  const auto nlat = static_cast<std::size_t>(header.get_int("nlat"));
  const auto nlon = static_cast<std::size_t>(header.get_int("nlon"));
  const auto ntime = static_cast<std::size_t>(header.get_int("ntime"));
  g.latitudes = parse_doubles(header.get("latitudes"), nlat, "latitudes");
  g.longitudes = parse_doubles(header.get("longitudes"), nlon, "longitudes");
  std::vector<Date> dates = dates_from_string(header.get("time"));
  if (dates.size() != ntime) throw SchemaError("time axis length does not match ntime");
  g.time_axis = TimeAxis(std::move(dates));
  if (const std::string* u = header.find("units")) g.units = *u;
  if (const std::string* rm = header.find("region_mask")) {
    g.region_mask = parse_ints(*rm, nlat * nlon, "region_mask");
  }

  const std::filesystem::path payload = path.parent_path() / header.get("payload");
  g.values = read_payload(payload, nlat * nlon * ntime);
  apply_sentinel(parse_sentinel(header), g.values, g.valid);
  g.validate();
  return g;
}

}  // namespace

void FieldGrid::validate() const {
  check_monotone(latitudes, "latitudes");
  check_monotone(longitudes, "longitudes");
  for (double lat : latitudes) {
    if (lat < -90.0 || lat > 90.0) throw SchemaError("latitude out of [-90, 90]");
  }
  if (time_axis.empty()) throw SchemaError("time axis is empty");
  const std::size_t cells = nlat() * nlon() * ntime();
  if (values.size() != cells || valid.size() != cells) {
    throw SchemaError("grid value count does not match nlat*nlon*ntime");
  }
  if (!region_mask.empty() && region_mask.size() != nlat() * nlon()) {
    throw SchemaError("region mask size does not match nlat*nlon");
  }
}

void MeasureField::validate() const {
  check_monotone(latitudes, "latitudes");
  check_monotone(longitudes, "longitudes");
  for (double lat : latitudes) {
    if (lat < -90.0 || lat > 90.0) throw SchemaError("latitude out of [-90, 90]");
  }
  const std::size_t cells = nlat() * nlon() * nwindow();
  if (sep.size() != cells || fim.size() != cells || fsc.size() != cells ||
      valid.size() != cells) {
    throw SchemaError("measure value count does not match nlat*nlon*nwindow");
  }
  for (std::size_t w = 1; w < window_end_dates.size(); ++w) {
    if (!(window_end_dates[w - 1] < window_end_dates[w])) {
      throw SchemaError("window end dates must be strictly increasing");
    }
  }
  if (!region_mask.empty() && region_mask.size() != nlat() * nlon()) {
    throw SchemaError("region mask size does not match nlat*nlon");
  }
}

const std::vector<double>& MeasureField::measure(const std::string& name) const {
  if (name == "sep") return sep;
  if (name == "fim") return fim;
  if (name == "fsc") return fsc;
  throw UnknownMeasure("unknown measure: " + name + " (expected sep, fim or fsc)");
}

FieldGrid load_grid(const std::filesystem::path& path, GridFormat format) {
  switch (format) {
    case GridFormat::native:
      return load_grid_native(path);
    case GridFormat::csv:
      return import_grid_csv(path);
  }
  throw BadParameters("unknown grid format");
}

void save_grid(const FieldGrid& grid, const std::filesystem::path& header_path) {
  grid.validate();
  const std::filesystem::path payload = payload_path_for(header_path);

  KvBlock header;
  header.add("format", std::string(kGridFormatTag));
  header.add("nlat", std::to_string(grid.nlat()));
  header.add("nlon", std::to_string(grid.nlon()));
  header.add("ntime", std::to_string(grid.ntime()));
  header.add("latitudes", join_doubles(grid.latitudes));
  header.add("longitudes", join_doubles(grid.longitudes));
  header.add("time", dates_to_string(grid.time_axis.dates()));
  if (!grid.units.empty()) header.add("units", grid.units);
  header.add("missing", "nan");
  header.add("byte_order", "little");
  header.add("payload", payload.filename().string());
  if (!grid.region_mask.empty()) header.add("region_mask", join_ints(grid.region_mask));

  write_header(header, header_path);
  write_payload(payload, {&grid.values}, grid.valid);
}

FieldGrid import_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open csv: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (trim(text).empty()) throw ParseError("empty csv file: " + path.string());

  std::istringstream lines(text);
  std::string line;
  bool saw_header = false;
  struct Obs {
    double value;
    bool present;
  };
  std::map<std::tuple<double, double, std::int32_t>, Obs> cells;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string_view sv = trim(line);
    if (sv.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    const std::string row(sv);
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        fields.emplace_back(trim(std::string_view(row).substr(start, i - start)));
        start = i + 1;
      }
    }
    if (!saw_header) {
      if (fields.size() != 4 || fields[0] != "lat" || fields[1] != "lon" ||
          fields[2] != "date" || fields[3] != "value") {
        throw SchemaError("csv must start with a 'lat,lon,date,value' header row");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("csv line " + std::to_string(lineno) + ": expected 4 fields");
    }
    const double lat = parse_double(fields[0]);
    const double lon = parse_double(fields[1]);
    const Date date = Date::parse(fields[2]);
    Obs obs{kNaN, false};
    if (!fields[3].empty()) {
      const double v = parse_double(fields[3]);
      if (!std::isnan(v)) obs = {v, true};
    }
    const auto key = std::make_tuple(lat, lon, date.serial());
    if (!cells.emplace(key, obs).second) {
      throw SchemaError("csv line " + std::to_string(lineno) + ": duplicate observation for (" +
                        fields[0] + ", " + fields[1] + ", " + fields[2] + ")");
    }
  }
  if (!saw_header) throw SchemaError("csv has no header row");
  if (cells.empty()) throw SchemaError("csv has no data rows");

  std::vector<double> lats, lons;
  std::vector<std::int32_t> serials;
  for (const auto& [key, obs] : cells) {
    lats.push_back(std::get<0>(key));
    lons.push_back(std::get<1>(key));
    serials.push_back(std::get<2>(key));
  }
  auto uniq = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(lats);
  uniq(lons);
  uniq(serials);

  FieldGrid g;
  g.latitudes = lats;
  g.longitudes = lons;
  std::vector<Date> dates;
  dates.reserve(serials.size());
  for (auto s : serials) dates.push_back(Date::from_serial(s));
  g.time_axis = TimeAxis(std::move(dates));
  g.values.assign(g.nlat() * g.nlon() * g.ntime(), kNaN);
  g.valid.assign(g.values.size(), 0);

  auto pos = [](const std::vector<double>& xs, double x) {
    return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  };
  for (const auto& [key, obs] : cells) {
    if (!obs.present) continue;
    const std::size_t i = pos(lats, std::get<0>(key));
    const std::size_t j = pos(lons, std::get<1>(key));
    const std::size_t k = static_cast<std::size_t>(
        std::lower_bound(serials.begin(), serials.end(), std::get<2>(key)) - serials.begin());
    g.values[g.index(i, j, k)] = obs.value;
    g.valid[g.index(i, j, k)] = 1;
  }
  g.validate();
  return g;
}

MeasureField load_measure_field(const std::filesystem::path& header_path) {
  const KvBlock header = load_header(header_path);
  if (header.get("format") != kMeasureFormatTag) {
    throw SchemaError("not a measure header: " + header_path.string());
  }
  if (header.get("byte_order") != "little") {
    throw SchemaError("unsupported byte order: " + header.get("byte_order"));
  }
  if (header.get("measures") != "sep fim fsc") {
    throw SchemaError("unsupported measure payload layout: " + header.get("measures"));
  }

  MeasureField f;
  const auto nlat = static_cast<std::size_t>(header.get_int("nlat"));
  const auto nlon = static_cast<std::size_t>(header.get_int("nlon"));
  const auto nwindow = static_cast<std::size_t>(header.get_int("nwindow"));
  f.latitudes = parse_doubles(header.get("latitudes"), nlat, "latitudes");
  f.longitudes = parse_doubles(header.get("longitudes"), nlon, "longitudes");
  f.window_end_dates = dates_from_string(header.get("windows"));
  if (f.window_end_dates.size() != nwindow) {
    throw SchemaError("window list length does not match nwindow");
  }
  f.standardized = header.get_bool("standardized");
  if (const std::string* rm = header.find("region_mask")) {
    f.region_mask = parse_ints(*rm, nlat * nlon, "region_mask");
  }

  const std::size_t cells = nlat * nlon * nwindow;
  const std::filesystem::path payload = header_path.parent_path() / header.get("payload");
  std::vector<double> all = read_payload(payload, cells * 3);
  f.sep.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cells));
  f.fim.assign(all.begin() + static_cast<std::ptrdiff_t>(cells),
               all.begin() + static_cast<std::ptrdiff_t>(2 * cells));
  f.fsc.assign(all.begin() + static_cast<std::ptrdiff_t>(2 * cells), all.end());

  const Sentinel sentinel = parse_sentinel(header);
  f.valid.assign(cells, 1);
  for (std::size_t i = 0; i < cells; ++i) {
    const bool m0 = sentinel.missing(f.sep[i]);
    if (m0 != sentinel.missing(f.fim[i]) || m0 != sentinel.missing(f.fsc[i])) {
      throw SchemaError("inconsistent missing cells across measures");
    }
    if (m0) {
      f.valid[i] = 0;
      f.sep[i] = f.fim[i] = f.fsc[i] = kNaN;
    }
  }
  f.validate();
  return f;
}

void save_measure_field(const MeasureField& field, const std::filesystem::path& header_path) {
  field.validate();
  const std::filesystem::path payload = payload_path_for(header_path);

  KvBlock header;
  header.add("format", std::string(kMeasureFormatTag));
  header.add("nlat", std::to_string(field.nlat()));
  header.add("nlon", std::to_string(field.nlon()));
  header.add("nwindow", std::to_string(field.nwindow()));
  header.add("latitudes", join_doubles(field.latitudes));
  header.add("longitudes", join_doubles(field.longitudes));
  header.add("windows", dates_to_string(field.window_end_dates));
  header.add("standardized", field.standardized ? "true" : "false");
  header.add("missing", "nan");
  header.add("byte_order", "little");
  header.add("measures", "sep fim fsc");
  header.add("payload", payload.filename().string());
  if (!field.region_mask.empty()) header.add("region_mask", join_ints(field.region_mask));

  write_header(header, header_path);
  write_payload(payload, {&field.sep, &field.fim, &field.fsc}, field.valid);
}

MeasureField analyze_grid(const FieldGrid& grid, const WindowSpec& spec,
                          const QuadratureSpec& quad, int workers) {
  grid.validate();
  spec.validate();
  quad.validate();

  const std::vector<Window> windows = make_windows(grid.time_axis, spec);
  MeasureField out;
  out.latitudes = grid.latitudes;
  out.longitudes = grid.longitudes;
  out.region_mask = grid.region_mask;
  out.window_end_dates.reserve(windows.size());
  for (const Window& w : windows) out.window_end_dates.push_back(w.end);

  const std::size_t locations = grid.nlat() * grid.nlon();
  const std::size_t nw = windows.size();
  out.sep.assign(locations * nw, kNaN);
  out.fim.assign(locations * nw, kNaN);
  out.fsc.assign(locations * nw, kNaN);
  out.valid.assign(locations * nw, 0);

  const std::size_t ntime = grid.ntime();
  parallel_for(locations, workers, [&](std::size_t loc) {
    const std::span<const double> values(&grid.values[loc * ntime], ntime);
    const std::span<const std::uint8_t> mask(&grid.valid[loc * ntime], ntime);
    const MeasureSeries series = analyze_series(values, mask, grid.time_axis, spec, quad);
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t at = loc * nw + w;
      out.sep[at] = series.sep[w];
      out.fim[at] = series.fim[w];
      out.fsc[at] = series.fsc[w];
      out.valid[at] = series.valid[w];
    }
  });
  return out;
}

MeasureField standardize_field(const MeasureField& field) {
  field.validate();
  MeasureField out = field;
  out.standardized = true;
  const std::size_t locations = field.nlat() * field.nlon();
  const std::size_t nw = field.nwindow();

  for (std::size_t loc = 0; loc < locations; ++loc) {
    const std::size_t base = loc * nw;
    std::size_t n = 0;
    for (std::size_t w = 0; w < nw; ++w) n += field.valid[base + w];
    if (n == 0) continue;  // fully missing location stays as it is

    bool degenerate = n < 2;
    std::vector<double>* seqs[] = {&out.sep, &out.fim, &out.fsc};
    double means[3], sds[3];
    for (int q = 0; q < 3 && !degenerate; ++q) {
      double sum = 0.0;
      for (std::size_t w = 0; w < nw; ++w) {
        if (field.valid[base + w]) sum += (*seqs[q])[base + w];
      }
      means[q] = sum / static_cast<double>(n);
      double ss = 0.0;
      for (std::size_t w = 0; w < nw; ++w) {
        if (field.valid[base + w]) {
          const double d = (*seqs[q])[base + w] - means[q];
          ss += d * d;
        }
      }
      const double var = ss / static_cast<double>(n);
      if (!(var > 0.0)) {
        degenerate = true;
        break;
      }
      sds[q] = std::sqrt(var);
    }

    if (degenerate) {
      for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t at = base + w;
        out.valid[at] = 0;
        out.sep[at] = out.fim[at] = out.fsc[at] = kNaN;
      }
      continue;
    }
    for (int q = 0; q < 3; ++q) {
      for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t at = base + w;
        if (field.valid[at]) (*seqs[q])[at] = ((*seqs[q])[at] - means[q]) / sds[q];
      }
    }
  }
  return out;
}

HovmollerTable hovmoller(const MeasureField& field, const std::string& measure,
                         std::optional<int> region) {
  field.validate();
  const std::vector<double>& data = field.measure(measure);
  if (region) {
    if (field.region_mask.empty()) {
      throw UnknownRegion("field carries no region mask");
    }
    if (std::find(field.region_mask.begin(), field.region_mask.end(), *region) ==
        field.region_mask.end()) {
      throw UnknownRegion("region label not present in mask: " + std::to_string(*region));
    }
  }

  HovmollerTable table;
  table.latitudes = field.latitudes;
  table.window_end_dates = field.window_end_dates;
  table.measure_name = measure;
  table.region_label = region;
  const std::size_t nw = field.nwindow();
  table.means.assign(field.nlat() * nw, kNaN);
  table.valid.assign(field.nlat() * nw, 0);

  for (std::size_t i = 0; i < field.nlat(); ++i) {
    for (std::size_t w = 0; w < nw; ++w) {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t j = 0; j < field.nlon(); ++j) {
        if (region && field.region_mask[i * field.nlon() + j] != *region) continue;
        const std::size_t at = field.index(i, j, w);
        if (!field.valid[at]) continue;
        sum += data[at];
        ++n;
      }
      if (n > 0) {
        table.means[table.index(i, w)] = sum / static_cast<double>(n);
        table.valid[table.index(i, w)] = 1;
      }
    }
  }
  return table;
}

EofInput to_eof_matrix(const MeasureField& field, const std::string& measure,
                       bool latitude_weighting) {
  field.validate();
  const std::vector<double>& data = field.measure(measure);
  const std::size_t locations = field.nlat() * field.nlon();
  const std::size_t nw = field.nwindow();

  EofInput out;
  for (std::size_t loc = 0; loc < locations; ++loc) {
    bool complete = nw > 0;
    for (std::size_t w = 0; w < nw; ++w) {
      if (!field.valid[loc * nw + w]) {
        complete = false;
        break;
      }
    }
    (complete ? out.row_locations : out.dropped_locations).push_back(loc);
  }
  if (out.row_locations.empty()) {
    throw EmptyMatrix("no complete locations available for EOF analysis");
  }

  out.matrix.data.resize(static_cast<Eigen::Index>(out.row_locations.size()),
                         static_cast<Eigen::Index>(nw));
  out.matrix.time_ids = field.window_end_dates;
  out.matrix.location_ids.reserve(out.row_locations.size());
  for (std::size_t r = 0; r < out.row_locations.size(); ++r) {
    const std::size_t loc = out.row_locations[r];
    const std::size_t i = loc / field.nlon();
    const std::size_t j = loc % field.nlon();
    out.matrix.location_ids.push_back(format_double(field.latitudes[i]) + "," +
                                      format_double(field.longitudes[j]));
    double weight = 1.0;
    if (latitude_weighting) {
      const double c = std::cos(field.latitudes[i] * std::numbers::pi / 180.0);
      weight = std::sqrt(std::max(c, 0.0));
    }
    for (std::size_t w = 0; w < nw; ++w) {
      out.matrix.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(w)) =
          weight * data[loc * nw + w];
    }
  }
  out.matrix.validate();
  return out;
}

}  // namespace fsgrid
