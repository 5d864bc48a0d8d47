#pragma once

// Landscape, fuel, weather and ignition inputs for a simulation run.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "firecal/grid.hpp"

namespace firecal {

// Reference spread behaviour of one fuel type. hros_ref/bros_ref are the
// head/back rates of spread (m/min) at the reference wind speed; lb_ref is
// the length-to-breadth ratio at that wind.
struct FuelParams {
  std::string name;
  double hros_ref = 0.0;
  double bros_ref = 0.0;
  double lb_ref = 1.0;

  void validate() const {
    if (!(hros_ref >= bros_ref) || !(bros_ref >= 0.0)) {
      throw std::invalid_argument("fuel requires hros_ref >= bros_ref >= 0");
    }
    if (!(lb_ref >= 1.0)) {
      throw std::invalid_argument("fuel length-to-breadth ratio must be >= 1");
    }
  }

  bool operator==(const FuelParams&) const = default;
};

struct Landscape {
  FuelGrid fuel_codes;                  // 0 = non-fuel
  double cell_size = 100.0;             // meters
  std::map<int, FuelParams> fuel_table; // keyed by fuel code

  int rows() const { return fuel_codes.rows(); }
  int cols() const { return fuel_codes.cols(); }

  // Distinct nonzero fuel codes present in the grid, ascending.
  std::vector<int> fuel_ids() const {
    std::map<int, bool> seen;
    for (int code : fuel_codes.cells()) {
      if (code != 0) {
        seen[code] = true;
      }
    }
    std::vector<int> ids;
    ids.reserve(seen.size());
    for (const auto& [id, _] : seen) {
      ids.push_back(id);
    }
    return ids;
  }

  void validate() const {
    if (fuel_codes.rows() < 1 || fuel_codes.cols() < 1) {
      throw std::invalid_argument("landscape must have at least one cell");
    }
    if (!(cell_size > 0.0)) {
      throw std::invalid_argument("cell size must be positive");
    }
    for (int code : fuel_codes.cells()) {
      if (code != 0 && !fuel_table.contains(code)) {
        throw std::invalid_argument("unknown fuel code " + std::to_string(code));
      }
    }
    for (const auto& [id, params] : fuel_table) {
      if (id == 0) {
        throw std::invalid_argument("fuel code 0 is reserved for non-fuel");
      }
      params.validate();
    }
  }

  bool operator==(const Landscape&) const = default;
};

// One weather record: wind speed in km/h, wind heading in degrees and the
// record's duration in minutes. The heading is the direction the head of the
// fire points (0 = East, counterclockwise), not the meteorological origin.
struct WeatherRecord {
  double wind_speed = 0.0;
  double wind_heading = 0.0;
  double duration = 0.0;

  bool operator==(const WeatherRecord&) const = default;
};

struct WeatherStream {
  std::vector<WeatherRecord> records;
  double reference_wind = 10.0;  // km/h

  double total_duration() const {
    double sum = 0.0;
    for (const auto& r : records) {
      sum += r.duration;
    }
    return sum;
  }

  // Index of the record covering minute t (records abut with no gaps).
  std::size_t record_index(double t) const {
    double end = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      end += records[i].duration;
      if (t < end) {
        return i;
      }
    }
    throw std::out_of_range("time beyond weather coverage");
  }

  void validate() const {
    if (records.empty()) {
      throw std::invalid_argument("weather stream is empty");
    }
    if (!(reference_wind > 0.0)) {
      throw std::invalid_argument("reference wind must be positive");
    }
    for (const auto& r : records) {
      if (!(r.wind_speed >= 0.0)) {
        throw std::invalid_argument("wind speed must be non-negative");
      }
      if (!(r.wind_heading >= 0.0) || !(r.wind_heading < 360.0)) {
        throw std::invalid_argument("wind heading must lie in [0, 360)");
      }
      if (!(r.duration > 0.0)) {
        throw std::invalid_argument("weather record duration must be positive");
      }
    }
  }

  bool operator==(const WeatherStream&) const = default;
};

struct IgnitionSpec {
  int row = 0;
  int col = 0;
  double start_time = 0.0;  // minutes

  bool operator==(const IgnitionSpec&) const = default;
};

}  // namespace firecal
