#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "firecal/fixtures.hpp"
#include "firecal/raster_io.hpp"

using namespace firecal;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FIRECAL_TEST_DATA;

bool entrywise_leq(const BurnGrid& a, const BurnGrid& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.cells()[i] > b.cells()[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("fixture cases construct valid instances") {
  for (const auto& fc :
       {fixtures::five_grid(), fixtures::homog20(), fixtures::multi8()}) {
    CHECK_NOTHROW(fc.land.validate());
    CHECK_NOTHROW(fc.weather.validate());
    CHECK_NOTHROW(fc.hidden_x.validate_for(fc.land));
    CHECK(fc.land.fuel_codes(fc.ignition.row, fc.ignition.col) != 0);
    CHECK(fc.weather.total_duration() >= fc.horizon);
  }
}

TEST_CASE("generate_target with identity factors equals the baseline run") {
  const auto fc = fixtures::homog20();
  const ScarSeries target = fixtures::generate_target(
      fc.land, fc.weather, fc.ignition, AdjustmentSet::identity(), fc.horizon, fc.report_every);
  const ScarSeries baseline =
      simulate(fc.land, fc.weather, fc.ignition, std::nullopt, fc.horizon, fc.report_every);
  CHECK(target == baseline);
}

TEST_CASE("the hidden factors burn strictly more area every period") {
  const auto fc = fixtures::homog20();
  const ScarSeries hidden = fc.target();
  const ScarSeries baseline = simulate(fc.land, fc.weather, fc.ignition,
                                       AdjustmentSet::identity(), fc.horizon, fc.report_every);
  REQUIRE(hidden.size() == baseline.size());
  for (std::size_t t = 0; t < hidden.size(); ++t) {
    CHECK(count_burned(hidden.grids[t]) > count_burned(baseline.grids[t]));
  }
}

TEST_CASE("uniform factor scaling dominates the kernel and contains the scar") {
  const auto fc = fixtures::homog20();
  const FuelParams& fuel = fc.land.fuel_table.at(1);

  for (double k : {1.1, 1.7, 2.5}) {
    const FactorTuple scaled{k, k, k, 1.0};
    for (const auto& wx : fc.weather.records) {
      const RosTriple ros{
          fuel.hros_ref * wx.wind_speed / fc.weather.reference_wind,
          derive_flank_ros(fuel.hros_ref * wx.wind_speed / fc.weather.reference_wind,
                           fuel.bros_ref,
                           std::max(1.0, fuel.lb_ref * wx.wind_speed /
                                             fc.weather.reference_wind)),
          fuel.bros_ref};
      const EllipseRates base = ellipse_rates(ros);
      const EllipseRates boosted = apply_factors(ros, scaled);
      for (double phi = 0.0; phi < 360.0; phi += 5.0) {
        CHECK(spread_rate(boosted, phi) >= spread_rate(base, phi) - 1e-12);
      }
    }

    const ScarSeries base_scars = simulate(fc.land, fc.weather, fc.ignition,
                                           AdjustmentSet::identity(), fc.horizon,
                                           fc.report_every);
    const ScarSeries boosted_scars = simulate(fc.land, fc.weather, fc.ignition,
                                              AdjustmentSet::global(scaled), fc.horizon,
                                              fc.report_every);
    for (std::size_t t = 0; t < base_scars.size(); ++t) {
      CHECK(entrywise_leq(base_scars.grids[t], boosted_scars.grids[t]));
    }
  }
}

TEST_CASE("the striped fixture exposes 32 decision variables") {
  const auto fc = fixtures::multi8();
  CHECK(fc.land.fuel_ids().size() == 8);
  CHECK(fc.hidden_x.flatten().size() == 32);
  // every fuel type actually takes part in the fire
  const ScarSeries target = fc.target();
  std::map<int, int> burned_by_fuel;
  const BurnGrid& last = target.grids.back();
  for (int r = 0; r < last.rows(); ++r) {
    for (int c = 0; c < last.cols(); ++c) {
      if (last(r, c)) {
        burned_by_fuel[fc.land.fuel_codes(r, c)]++;
      }
    }
  }
  CHECK(burned_by_fuel.size() >= 4);  // the fire crosses several stripes
}

TEST_CASE("shipped fixture files match the in-memory builders") {
  const auto fc = fixtures::homog20();
  const Landscape land =
      load_landscape(kData / "homog20" / "fuel_grid.asc", kData / "homog20" / "fuels.csv");
  CHECK(land == fc.land);
  CHECK(load_weather(kData / "homog20" / "weather.csv") == fc.weather);
  CHECK(load_ignition(kData / "homog20" / "ignition.csv") == fc.ignition);

  const auto five = fixtures::five_grid();
  const Landscape five_land =
      load_landscape(kData / "five" / "fuel_grid.asc", kData / "five" / "fuels.csv");
  CHECK(five_land == five.land);

  const auto m8 = fixtures::multi8();
  const Landscape m8_land =
      load_landscape(kData / "multi8" / "fuel_grid.asc", kData / "multi8" / "fuels.csv");
  CHECK(m8_land == m8.land);
}

TEST_CASE("shipped target scars regenerate bit-exactly from their inputs") {
  const auto fc = fixtures::homog20();
  std::vector<fs::path> paths;
  std::vector<double> timestamps;
  for (int t = 1; t <= 7; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "scar_%04d.asc", 60 * t);
    paths.push_back(kData / "homog20" / "target" / name);
    timestamps.push_back(60.0 * t);
  }
  const ScarSeries shipped = load_scars(paths, timestamps);
  const ScarSeries regenerated = fc.target();
  CHECK(shipped == regenerated);
}
