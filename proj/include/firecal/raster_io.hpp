#pragma once

// Text-based persistence: ASCII-grid rasters for fuel codes and burn grids,
// CSV tables for fuels, weather and ignitions. The raster layout mirrors the
// common GIS ASCII grid (header keys, then space-separated rows, top row
// northernmost) so real exports load directly; xllcorner/yllcorner header
// lines are accepted and ignored.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "firecal/grid.hpp"
#include "firecal/landscape.hpp"

namespace firecal {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes via a sibling temp file and renames into place, so a failed run
// never leaves a partially written artifact.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const auto dir = path.parent_path();
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
  }
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw IoError("cannot write file: " + tmp);
    }
    out << text;
    if (!out.flush()) {
      throw IoError("failed writing file: " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw IoError("invalid " + what + " value: '" + s + "'");
  }
}

inline long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw IoError("invalid " + what + " value: '" + s + "'");
  }
}

}  // namespace io_detail

struct AsciiGrid {
  int rows = 0;
  int cols = 0;
  std::optional<double> cellsize;
  long long nodata = -9999;
  std::vector<long long> values;  // row-major, top row first
};

inline AsciiGrid read_ascii_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open raster: " + path.string());
  }
  AsciiGrid grid;
  std::optional<int> ncols, nrows;
  std::string token;
  // Header: <key> <value> lines until the first purely numeric token.
  while (in >> token) {
    const std::string key = io_detail::lower(token);
    if (key == "ncols" || key == "nrows" || key == "cellsize" || key == "nodata_value" ||
        key == "xllcorner" || key == "yllcorner") {
      std::string value;
      if (!(in >> value)) {
        throw IoError("truncated raster header in " + path.string());
      }
      if (key == "ncols") {
        ncols = static_cast<int>(io_detail::parse_int(value, "ncols"));
      } else if (key == "nrows") {
        nrows = static_cast<int>(io_detail::parse_int(value, "nrows"));
      } else if (key == "cellsize") {
        grid.cellsize = io_detail::parse_double(value, "cellsize");
      } else if (key == "nodata_value") {
        grid.nodata = io_detail::parse_int(value, "NODATA_value");
      }
    } else {
      if (!ncols || !nrows) {
        throw IoError("raster header missing ncols/nrows: " + path.string());
      }
      grid.values.push_back(io_detail::parse_int(token, "cell"));
      break;
    }
  }
  if (!ncols || !nrows) {
    throw IoError("raster header missing ncols/nrows: " + path.string());
  }
  grid.rows = *nrows;
  grid.cols = *ncols;
  while (in >> token) {
    grid.values.push_back(io_detail::parse_int(token, "cell"));
  }
  const std::size_t expected = static_cast<std::size_t>(grid.rows) * grid.cols;
  if (grid.values.size() != expected) {
    throw IoError("raster body size does not match header in " + path.string() + ": expected " +
                  std::to_string(expected) + " cells, found " + std::to_string(grid.values.size()));
  }
  return grid;
}

inline void write_ascii_grid(const std::filesystem::path& path, int rows, int cols,
                             double cellsize, long long nodata,
                             const std::vector<long long>& values) {
  std::ostringstream out;
  out << "ncols " << cols << "\n";
  out << "nrows " << rows << "\n";
  out << "cellsize " << cellsize << "\n";
  out << "NODATA_value " << nodata << "\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out << values[static_cast<std::size_t>(r) * cols + c] << (c + 1 == cols ? "" : " ");
    }
    out << "\n";
  }
  io_detail::write_text_atomic(path, out.str());
}

// CSV with header id,name,hros_ref,bros_ref,lb_ref.
inline std::map<int, FuelParams> load_fuel_table(const std::filesystem::path& path) {
  std::istringstream in(io_detail::read_text(path));
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("empty fuel table: " + path.string());
  }
  const auto header = io_detail::split_csv_line(line);
  const std::vector<std::string> expected{"id", "name", "hros_ref", "bros_ref", "lb_ref"};
  if (header.size() != expected.size()) {
    throw IoError("fuel table header must be id,name,hros_ref,bros_ref,lb_ref");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (io_detail::lower(header[i]) != expected[i]) {
      throw IoError("fuel table header must be id,name,hros_ref,bros_ref,lb_ref");
    }
  }
  std::map<int, FuelParams> table;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto f = io_detail::split_csv_line(line);
    if (f.size() != 5) {
      throw IoError("malformed fuel table row: '" + line + "'");
    }
    const int id = static_cast<int>(io_detail::parse_int(f[0], "fuel id"));
    FuelParams params{f[1], io_detail::parse_double(f[2], "hros_ref"),
                      io_detail::parse_double(f[3], "bros_ref"),
                      io_detail::parse_double(f[4], "lb_ref")};
    params.validate();
    if (id == 0) {
      throw IoError("fuel id 0 is reserved for non-fuel");
    }
    if (!table.emplace(id, std::move(params)).second) {
      throw IoError("duplicate fuel id " + std::to_string(id));
    }
  }
  if (table.empty()) {
    throw IoError("fuel table has no rows: " + path.string());
  }
  return table;
}

// Fuel grid raster + fuel table CSV. NODATA cells and code 0 both load as
// non-fuel.
inline Landscape load_landscape(const std::filesystem::path& fuel_grid_path,
                                const std::filesystem::path& fuel_table_path) {
  const AsciiGrid raw = read_ascii_grid(fuel_grid_path);
  Landscape land;
  land.cell_size = raw.cellsize.value_or(100.0);
  land.fuel_table = load_fuel_table(fuel_table_path);
  land.fuel_codes = FuelGrid(raw.rows, raw.cols, 0);
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    const long long v = raw.values[i];
    land.fuel_codes.cells()[i] = (v == raw.nodata) ? 0 : static_cast<int>(v);
  }
  land.validate();
  return land;
}

inline void write_landscape_grid(const Landscape& land, const std::filesystem::path& path) {
  std::vector<long long> values(land.fuel_codes.cells().begin(), land.fuel_codes.cells().end());
  write_ascii_grid(path, land.rows(), land.cols(), land.cell_size, -9999, values);
}

// CSV with header wind_speed,wind_heading,duration. A comment line of the
// form "# reference_wind <value>" (or "...=<value>") sets the reference wind;
// it defaults to 10 km/h otherwise.
inline WeatherStream load_weather(const std::filesystem::path& path) {
  std::istringstream in(io_detail::read_text(path));
  WeatherStream stream;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    if (line[0] == '#') {
      const auto pos = line.find("reference_wind");
      if (pos != std::string::npos) {
        auto rest = line.substr(pos + std::string("reference_wind").size());
        std::replace(rest.begin(), rest.end(), '=', ' ');
        std::istringstream val(rest);
        double rw = 0.0;
        if (!(val >> rw)) {
          throw IoError("malformed reference_wind directive: '" + line + "'");
        }
        stream.reference_wind = rw;
      }
      continue;
    }
    if (!header_seen) {
      const auto header = io_detail::split_csv_line(line);
      if (header.size() != 3 || io_detail::lower(header[0]) != "wind_speed" ||
          io_detail::lower(header[1]) != "wind_heading" ||
          io_detail::lower(header[2]) != "duration") {
        throw IoError("weather header must be wind_speed,wind_heading,duration");
      }
      header_seen = true;
      continue;
    }
    const auto f = io_detail::split_csv_line(line);
    if (f.size() != 3) {
      throw IoError("malformed weather row: '" + line + "'");
    }
    stream.records.push_back(WeatherRecord{io_detail::parse_double(f[0], "wind_speed"),
                                           io_detail::parse_double(f[1], "wind_heading"),
                                           io_detail::parse_double(f[2], "duration")});
  }
  stream.validate();
  return stream;
}

inline void write_weather(const WeatherStream& stream, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# reference_wind " << stream.reference_wind << "\n";
  out << "wind_speed,wind_heading,duration\n";
  for (const auto& r : stream.records) {
    out << r.wind_speed << "," << r.wind_heading << "," << r.duration << "\n";
  }
  io_detail::write_text_atomic(path, out.str());
}

// One-line CSV row,col,start_time with header.
inline IgnitionSpec load_ignition(const std::filesystem::path& path) {
  std::istringstream in(io_detail::read_text(path));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') {
      rows.push_back(line);
    }
  }
  if (rows.size() != 2) {
    throw IoError("ignition file must hold a header and one row: " + path.string());
  }
  const auto header = io_detail::split_csv_line(rows[0]);
  if (header.size() != 3 || io_detail::lower(header[0]) != "row" ||
      io_detail::lower(header[1]) != "col" || io_detail::lower(header[2]) != "start_time") {
    throw IoError("ignition header must be row,col,start_time");
  }
  const auto f = io_detail::split_csv_line(rows[1]);
  if (f.size() != 3) {
    throw IoError("malformed ignition row: '" + rows[1] + "'");
  }
  IgnitionSpec ign;
  ign.row = static_cast<int>(io_detail::parse_int(f[0], "row"));
  ign.col = static_cast<int>(io_detail::parse_int(f[1], "col"));
  ign.start_time = io_detail::parse_double(f[2], "start_time");
  if (ign.start_time < 0.0) {
    throw IoError("ignition start_time must be >= 0");
  }
  return ign;
}

inline void write_ignition(const IgnitionSpec& ign, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "row,col,start_time\n" << ign.row << "," << ign.col << "," << ign.start_time << "\n";
  io_detail::write_text_atomic(path, out.str());
}

inline void write_burn_grid(const BurnGrid& grid, const std::filesystem::path& path,
                            double cellsize = 100.0) {
  std::vector<long long> values(grid.cells().begin(), grid.cells().end());
  write_ascii_grid(path, grid.rows(), grid.cols(), cellsize, -9999, values);
}

inline BurnGrid load_burn_grid(const std::filesystem::path& path) {
  const AsciiGrid raw = read_ascii_grid(path);
  BurnGrid grid(raw.rows, raw.cols, 0);
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    const long long v = raw.values[i];
    if (v != 0 && v != 1) {
      throw IoError("non-binary scar value " + std::to_string(v) + " in " + path.string());
    }
    grid.cells()[i] = static_cast<std::uint8_t>(v);
  }
  return grid;
}

inline ScarSeries load_scars(const std::vector<std::filesystem::path>& paths,
                             const std::vector<double>& timestamps) {
  if (paths.size() != timestamps.size()) {
    throw std::invalid_argument("scar paths and timestamps differ in length");
  }
  ScarSeries series;
  for (const auto& p : paths) {
    series.grids.push_back(load_burn_grid(p));
    if (series.grids.back().rows() != series.grids.front().rows() ||
        series.grids.back().cols() != series.grids.front().cols()) {
      throw IoError("scar series dimensions differ at " + p.string());
    }
  }
  series.timestamps = timestamps;
  series.validate();
  return series;
}

// Portable graymap render of a burn grid (P2): unburned white, burned black.
inline void write_burn_grid_pgm(const BurnGrid& grid, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "P2\n" << grid.cols() << " " << grid.rows() << "\n255\n";
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      out << (grid(r, c) ? 0 : 255) << (c + 1 == grid.cols() ? "" : " ");
    }
    out << "\n";
  }
  io_detail::write_text_atomic(path, out.str());
}

}  // namespace firecal
