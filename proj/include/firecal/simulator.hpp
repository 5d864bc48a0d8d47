#pragma once

// Time-stepped cellular-automaton fire growth. Each burning cell pushes fire
// along its 8 neighbor axes at the directional rate of spread of its adjusted
// ellipse; a neighbor ignites when the accumulated progress reaches its
// center. Emitted burn grids are cumulative (burning and burned cells both
// count as 1).
//
// Step rule, spelled out so oracles can replicate it by hand:
//   - the ignition cell turns Burning once the clock reaches start_time (so
//     it already shows in a report falling on that instant) and spreads
//     during the step that begins there;
//   - per step of length dt, every burning cell adds rate * dt to each
//     unresolved axis whose target is still an available fuel cell; when an
//     axis reaches the center-to-center distance, the target turns Burning at
//     the end of the step (progress above the distance is discarded) and
//     starts spreading on the following step;
//   - a burning cell turns Burned once every axis has either delivered or
//     points at a cell that cannot ignite (off-grid, non-fuel, or already
//     burning/burned at the end of the step);
//   - weather is sampled at the start of each step.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "firecal/ellipse.hpp"
#include "firecal/grid.hpp"
#include "firecal/landscape.hpp"

namespace firecal {

enum class CellState : std::uint8_t { Available, Burning, Burned, NonFuel };

// The decision vector: one factor tuple shared by every fuel (Global) or one
// tuple per fuel type present in the landscape (FMS). Flattened order is
// ascending fuel id, tuple components x1..x4.
struct AdjustmentSet {
  enum class Mode { Global, FMS };

  Mode mode = Mode::Global;
  FactorTuple global_factors;
  std::map<int, FactorTuple> per_fuel;

  static AdjustmentSet global(const FactorTuple& x) {
    AdjustmentSet set;
    set.mode = Mode::Global;
    set.global_factors = x;
    return set;
  }

  static AdjustmentSet fms(std::map<int, FactorTuple> per_fuel) {
    AdjustmentSet set;
    set.mode = Mode::FMS;
    set.per_fuel = std::move(per_fuel);
    return set;
  }

  static AdjustmentSet identity() { return global(FactorTuple{}); }

  const FactorTuple& tuple_for(int fuel_id) const {
    if (mode == Mode::Global) {
      return global_factors;
    }
    const auto it = per_fuel.find(fuel_id);
    if (it == per_fuel.end()) {
      throw std::invalid_argument("no adjustment tuple for fuel " + std::to_string(fuel_id));
    }
    return it->second;
  }

  void validate_for(const Landscape& land) const {
    if (mode == Mode::Global) {
      validate(global_factors);
      return;
    }
    for (int id : land.fuel_ids()) {
      validate(tuple_for(id));
    }
  }

  std::vector<double> flatten() const {
    std::vector<double> x;
    if (mode == Mode::Global) {
      x = {global_factors.x1, global_factors.x2, global_factors.x3, global_factors.x4};
    } else {
      x.reserve(4 * per_fuel.size());
      for (const auto& [_, t] : per_fuel) {
        x.insert(x.end(), {t.x1, t.x2, t.x3, t.x4});
      }
    }
    return x;
  }

  static AdjustmentSet decode(Mode mode, std::span<const int> fuel_ids,
                              std::span<const double> x) {
    if (mode == Mode::Global) {
      if (x.size() != 4) {
        throw std::invalid_argument("global decision vector must have 4 entries");
      }
      return global(FactorTuple{x[0], x[1], x[2], x[3]});
    }
    if (x.size() != 4 * fuel_ids.size()) {
      throw std::invalid_argument("FMS decision vector must have 4 entries per fuel");
    }
    std::map<int, FactorTuple> per_fuel;
    for (std::size_t i = 0; i < fuel_ids.size(); ++i) {
      per_fuel[fuel_ids[i]] = FactorTuple{x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
    }
    return fms(std::move(per_fuel));
  }

  bool operator==(const AdjustmentSet&) const = default;
};

namespace sim_detail {

struct Axis {
  int dr, dc;
  double bearing;    // degrees, E = 0, counterclockwise
  double dist_mult;  // center-to-center distance in cell sizes
};

// Row index grows southward, so north is dr = -1.
inline constexpr std::array<Axis, 8> kAxes{{
    {0, 1, 0.0, 1.0},                      // E
    {-1, 1, 45.0, std::numbers::sqrt2},    // NE
    {-1, 0, 90.0, 1.0},                    // N
    {-1, -1, 135.0, std::numbers::sqrt2},  // NW
    {0, -1, 180.0, 1.0},                   // W
    {1, -1, 225.0, std::numbers::sqrt2},   // SW
    {1, 0, 270.0, 1.0},                    // S
    {1, 1, 315.0, std::numbers::sqrt2},    // SE
}};

struct BurnCell {
  std::array<double, 8> progress{};
  std::uint8_t delivered = 0;
};

// Wind response of the default table-driven ROS provider: the head rate and
// the length-to-breadth ratio scale with wind speed relative to the
// reference, the back rate stays constant.
inline RosTriple ros_at(const FuelParams& fuel, const WeatherRecord& wx, double reference_wind) {
  const double scale = wx.wind_speed / reference_wind;
  const double hros = fuel.hros_ref * scale;
  const double bros = fuel.bros_ref;
  const double lb = std::max(1.0, fuel.lb_ref * scale);
  return RosTriple{hros, derive_flank_ros(hros, bros, lb), bros};
}

}  // namespace sim_detail

// Runs the automaton and reports one cumulative burn grid per report period.
// Passing no adjustment set runs the unadjusted kernel directly; an all-ones
// set reproduces it bit-exactly.
inline ScarSeries simulate(const Landscape& land, const WeatherStream& weather,
                           const IgnitionSpec& ign,
                           const std::optional<AdjustmentSet>& factors, double horizon,
                           double report_every, double dt = 1.0) {
  land.validate();
  weather.validate();
  if (factors) {
    factors->validate_for(land);
  }
  if (!(dt > 0.0) || !(report_every > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("dt, report_every and horizon must be positive");
  }
  const auto near_multiple = [](double value, double base) {
    const double q = value / base;
    return std::abs(q - std::round(q)) < 1e-9;
  };
  if (!near_multiple(horizon, report_every)) {
    throw std::invalid_argument("horizon must be a multiple of report_every");
  }
  if (!near_multiple(report_every, dt)) {
    throw std::invalid_argument("report_every must be a multiple of dt");
  }
  if (horizon > weather.total_duration() + 1e-9) {
    throw std::invalid_argument("horizon exceeds weather coverage");
  }
  if (!land.fuel_codes.in_bounds(ign.row, ign.col)) {
    throw std::invalid_argument("ignition outside the landscape");
  }
  if (land.fuel_codes(ign.row, ign.col) == 0) {
    throw std::invalid_argument("ignition on a non-fuel cell");
  }

  const int rows = land.rows();
  const int cols = land.cols();
  Grid<CellState> states(rows, cols, CellState::Available);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (land.fuel_codes(r, c) == 0) {
        states(r, c) = CellState::NonFuel;
      }
    }
  }

  std::array<double, 8> dist;
  for (std::size_t k = 0; k < 8; ++k) {
    dist[k] = land.cell_size * sim_detail::kAxes[k].dist_mult;
  }

  // Axis spread rates per fuel, rebuilt when the weather record changes.
  std::map<int, std::array<double, 8>> axis_rates;
  std::size_t cached_record = static_cast<std::size_t>(-1);
  const auto refresh_rates = [&](std::size_t record) {
    axis_rates.clear();
    const WeatherRecord& wx = weather.records[record];
    for (int id : land.fuel_ids()) {
      const RosTriple ros = sim_detail::ros_at(land.fuel_table.at(id), wx, weather.reference_wind);
      const EllipseRates er =
          factors ? apply_factors(ros, factors->tuple_for(id)) : ellipse_rates(ros);
      std::array<double, 8>& rates = axis_rates[id];
      for (std::size_t k = 0; k < 8; ++k) {
        rates[k] = spread_rate(er, sim_detail::kAxes[k].bearing - wx.wind_heading);
      }
    }
    cached_record = record;
  };

  std::map<int, sim_detail::BurnCell> burning;  // keyed by row-major cell index
  bool ignited = false;

  ScarSeries series;
  const long long steps = static_cast<long long>(std::llround(horizon / dt));
  const long long report_stride = static_cast<long long>(std::llround(report_every / dt));

  const auto maybe_ignite = [&](double now) {
    if (!ignited && now >= ign.start_time - 1e-9) {
      states(ign.row, ign.col) = CellState::Burning;
      burning.emplace(ign.row * cols + ign.col, sim_detail::BurnCell{});
      ignited = true;
    }
  };

  std::vector<int> to_ignite;
  std::vector<int> to_retire;
  for (long long step = 1; step <= steps; ++step) {
    const double clock = static_cast<double>(step - 1) * dt;
    maybe_ignite(clock);

    const std::size_t record = weather.record_index(std::min(clock, weather.total_duration() - 1e-9));
    if (record != cached_record) {
      refresh_rates(record);
    }

    to_ignite.clear();
    for (auto& [idx, cell] : burning) {
      const int r = idx / cols;
      const int c = idx % cols;
      const std::array<double, 8>& rates = axis_rates.at(land.fuel_codes(r, c));
      for (std::size_t k = 0; k < 8; ++k) {
        if (cell.delivered & (1u << k)) {
          continue;
        }
        const int nr = r + sim_detail::kAxes[k].dr;
        const int nc = c + sim_detail::kAxes[k].dc;
        if (!states.in_bounds(nr, nc) || states(nr, nc) != CellState::Available) {
          continue;
        }
        cell.progress[k] += rates[k] * dt;
        if (cell.progress[k] >= dist[k]) {
          cell.progress[k] = dist[k];
          cell.delivered |= static_cast<std::uint8_t>(1u << k);
          to_ignite.push_back(nr * cols + nc);
        }
      }
    }

    for (int idx : to_ignite) {
      if (states(idx / cols, idx % cols) == CellState::Available) {
        states(idx / cols, idx % cols) = CellState::Burning;
        burning.emplace(idx, sim_detail::BurnCell{});
      }
    }

    to_retire.clear();
    for (const auto& [idx, cell] : burning) {
      const int r = idx / cols;
      const int c = idx % cols;
      bool resolved = true;
      for (std::size_t k = 0; k < 8 && resolved; ++k) {
        if (cell.delivered & (1u << k)) {
          continue;
        }
        const int nr = r + sim_detail::kAxes[k].dr;
        const int nc = c + sim_detail::kAxes[k].dc;
        resolved = !states.in_bounds(nr, nc) || states(nr, nc) != CellState::Available;
      }
      if (resolved) {
        to_retire.push_back(idx);
      }
    }
    for (int idx : to_retire) {
      states(idx / cols, idx % cols) = CellState::Burned;
      burning.erase(idx);
    }

    maybe_ignite(static_cast<double>(step) * dt);
    if (step % report_stride == 0) {
      BurnGrid grid(rows, cols, 0);
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          const CellState s = states(r, c);
          grid(r, c) = (s == CellState::Burning || s == CellState::Burned) ? 1 : 0;
        }
      }
      series.grids.push_back(std::move(grid));
      series.timestamps.push_back(static_cast<double>(step) * dt);
    }
  }
  return series;
}

inline ScarSeries simulate(const Landscape& land, const WeatherStream& weather,
                           const IgnitionSpec& ign, const AdjustmentSet& factors, double horizon,
                           double report_every, double dt = 1.0) {
  return simulate(land, weather, ign, std::optional<AdjustmentSet>(factors), horizon,
                  report_every, dt);
}

}  // namespace firecal
