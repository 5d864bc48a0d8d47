#pragma once

// Deterministic synthetic instances used by the tests, the demos and the
// benchmark harness: small homogeneous landscapes, a striped multi-fuel
// landscape, and hidden-factor target generators whose optimum error is zero
// by construction.

#include <string>
#include <vector>

#include "firecal/calibrate.hpp"
#include "firecal/simulator.hpp"

namespace firecal::fixtures {

inline Landscape homogeneous_landscape(int rows, int cols, double cell_size, int fuel_id,
                                       const FuelParams& fuel) {
  Landscape land;
  land.fuel_codes = FuelGrid(rows, cols, fuel_id);
  land.cell_size = cell_size;
  land.fuel_table[fuel_id] = fuel;
  land.validate();
  return land;
}

// Vertical fuel stripes, one per table entry, west to east.
inline Landscape striped_landscape(int rows, int cols, double cell_size,
                                   const std::vector<std::pair<int, FuelParams>>& stripes) {
  if (stripes.empty() || cols % static_cast<int>(stripes.size()) != 0) {
    throw std::invalid_argument("column count must be a multiple of the stripe count");
  }
  Landscape land;
  land.fuel_codes = FuelGrid(rows, cols, 0);
  land.cell_size = cell_size;
  const int width = cols / static_cast<int>(stripes.size());
  for (int c = 0; c < cols; ++c) {
    const auto& [id, params] = stripes[c / width];
    for (int r = 0; r < rows; ++r) {
      land.fuel_codes(r, c) = id;
    }
    land.fuel_table[id] = params;
  }
  land.validate();
  return land;
}

inline WeatherStream constant_weather(double speed, double heading, double duration,
                                      double reference = 10.0) {
  WeatherStream stream;
  stream.records.push_back(WeatherRecord{speed, heading, duration});
  stream.reference_wind = reference;
  stream.validate();
  return stream;
}

// Target scars for a hidden factor vector. Because the target is produced by
// the same simulator, the calibration optimum over the fixture is exactly
// zero at the hidden factors.
inline ScarSeries generate_target(const Landscape& land, const WeatherStream& weather,
                                  const IgnitionSpec& ign, const AdjustmentSet& hidden_x,
                                  double horizon, double report_every, double dt = 1.0) {
  return simulate(land, weather, ign, hidden_x, horizon, report_every, dt);
}

struct FixtureCase {
  std::string name;
  Landscape land;
  WeatherStream weather;
  IgnitionSpec ignition;
  AdjustmentSet hidden_x;
  double horizon = 0.0;
  double report_every = 0.0;

  ScarSeries target() const {
    return generate_target(land, weather, ignition, hidden_x, horizon, report_every);
  }

  CalibrationInstance instance() const {
    return CalibrationInstance{land, weather, ignition, target()};
  }
};

// 5x5 circular-spread instance whose first two minutes are verified against a
// hand simulation of the step rule: rate 100 m/min on 100 m cells ignites the
// four orthogonal neighbors at minute 1 and the diagonals at minute 2.
inline FixtureCase five_grid() {
  FixtureCase fc;
  fc.name = "five";
  fc.land = homogeneous_landscape(5, 5, 100.0, 1, FuelParams{"grass", 100.0, 100.0, 1.0});
  fc.weather = constant_weather(10.0, 0.0, 480.0);
  fc.ignition = IgnitionSpec{2, 2, 0.0};
  fc.hidden_x = AdjustmentSet::identity();
  fc.horizon = 7.0;
  fc.report_every = 1.0;
  return fc;
}

// 20x20 homogeneous instance with a hidden global factor vector; the
// east-pointing wind stream varies hour by hour. Used by the recovery,
// real-time and benchmark tests.
inline FixtureCase homog20() {
  FixtureCase fc;
  fc.name = "homog20";
  fc.land = homogeneous_landscape(20, 20, 100.0, 1, FuelParams{"brush", 1.4, 1.12, 1.02});
  fc.weather.reference_wind = 10.0;
  for (double speed : {10.0, 11.0, 12.0, 13.0, 12.0, 11.0, 10.0}) {
    fc.weather.records.push_back(WeatherRecord{speed, 0.0, 60.0});
  }
  fc.ignition = IgnitionSpec{10, 3, 0.0};
  fc.hidden_x = AdjustmentSet::global(FactorTuple{1.4, 1.1, 1.8, 1.15});
  fc.horizon = 420.0;
  fc.report_every = 60.0;
  return fc;
}

// 24x24 landscape striped with eight fuel types and a hidden per-fuel factor
// set (32 decision variables in FMS mode).
inline FixtureCase multi8() {
  FixtureCase fc;
  fc.name = "multi8";
  std::vector<std::pair<int, FuelParams>> stripes;
  std::map<int, FactorTuple> hidden;
  const double hros[] = {1.2, 1.5, 1.8, 1.3, 2.0, 1.6, 1.4, 1.9};
  const double lb[] = {1.05, 1.10, 1.15, 1.08, 1.20, 1.12, 1.06, 1.18};
  const FactorTuple tuples[] = {
      {1.30, 1.05, 0.90, 1.10}, {0.80, 1.10, 1.20, 0.95}, {1.50, 0.90, 1.05, 1.20},
      {1.00, 1.00, 1.00, 1.00}, {0.60, 1.20, 0.80, 1.05}, {1.80, 0.95, 1.10, 0.90},
      {1.10, 1.30, 0.70, 1.15}, {0.90, 1.00, 1.40, 1.25},
  };
  for (int i = 0; i < 8; ++i) {
    const int id = i + 1;
    stripes.emplace_back(id, FuelParams{"fuel-" + std::to_string(id), hros[i], 0.6 * hros[i],
                                        lb[i]});
    hidden[id] = tuples[i];
  }
  fc.land = striped_landscape(24, 24, 100.0, stripes);
  fc.weather = constant_weather(10.0, 0.0, 480.0);
  fc.ignition = IgnitionSpec{12, 4, 0.0};
  fc.hidden_x = AdjustmentSet::fms(std::move(hidden));
  fc.horizon = 420.0;
  fc.report_every = 60.0;
  return fc;
}

}  // namespace firecal::fixtures
