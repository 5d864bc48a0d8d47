#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "firecal/calibrate.hpp"
#include "firecal/fixtures.hpp"

using namespace firecal;

namespace {

CalibrationSpec quick_spec(std::size_t periods, Algorithm algorithm, long long budget) {
  CalibrationSpec spec;
  spec.mode = AdjustmentSet::Mode::Global;
  spec.mu.assign(periods, 1.0 / static_cast<double>(periods));
  spec.algorithm = algorithm;
  spec.opts.max_evals = budget;
  return spec;
}

}  // namespace

TEST_CASE("adjustment sets flatten and decode as inverses") {
  SECTION("global") {
    const AdjustmentSet set = AdjustmentSet::global(FactorTuple{1.4, 1.1, 1.8, 1.15});
    const auto flat = set.flatten();
    REQUIRE(flat == std::vector<double>{1.4, 1.1, 1.8, 1.15});
    CHECK(AdjustmentSet::decode(AdjustmentSet::Mode::Global, {}, flat) == set);
  }
  SECTION("fms keeps ascending fuel order") {
    const std::vector<int> ids{2, 5, 9};
    std::map<int, FactorTuple> per_fuel;
    per_fuel[5] = FactorTuple{1, 2, 3, 4};
    per_fuel[2] = FactorTuple{5, 6, 7, 8};
    per_fuel[9] = FactorTuple{9, 10, 11, 12};
    const AdjustmentSet set = AdjustmentSet::fms(per_fuel);
    const auto flat = set.flatten();
    REQUIRE(flat.size() == 12);
    CHECK(flat[0] == 5.0);  // fuel 2 first
    CHECK(flat[4] == 1.0);  // then fuel 5
    CHECK(flat[8] == 9.0);  // then fuel 9
    CHECK(AdjustmentSet::decode(AdjustmentSet::Mode::FMS, ids, flat) == set);
  }
}

TEST_CASE("calibration from the optimum start stays there") {
  const auto fc = fixtures::five_grid();
  const ScarSeries observed =
      simulate(fc.land, fc.weather, fc.ignition, AdjustmentSet::identity(), 7.0, 1.0);

  CalibrationSpec spec = quick_spec(observed.size(), Algorithm::PatternSearch, 60);
  spec.dt = 1.0;
  const CalibrationResult result =
      calibrate(fc.land, fc.weather, fc.ignition, observed, spec);
  CHECK(result.initial_error == 0.0);
  CHECK(result.final_error == 0.0);
  CHECK(result.x_star == AdjustmentSet::identity());
}

TEST_CASE("hidden global factors are recovered on the homogeneous fixture") {
  const auto fc = fixtures::homog20();
  const ScarSeries observed = fc.target();

  CalibrationSpec spec = quick_spec(observed.size(), Algorithm::QuadraticTR, 200);
  const CalibrationResult result =
      calibrate(fc.land, fc.weather, fc.ignition, observed, spec);

  CHECK(result.opt.neval <= 200);
  CHECK(result.final_error <= result.initial_error);
  CHECK(result.final_error <= 0.2 * result.initial_error);

  // final_error is the weighted error at the decoded optimum
  const ScarSeries replay = simulate(fc.land, fc.weather, fc.ignition, result.x_star,
                                     fc.horizon, fc.report_every);
  CHECK(weighted_error(replay, observed, spec.mu) ==
        Catch::Approx(result.final_error).margin(1e-12));
}

TEST_CASE("fms calibration spans four variables per fuel") {
  const auto fc = fixtures::multi8();
  const ScarSeries observed = fc.target();

  CalibrationSpec spec = quick_spec(observed.size(), Algorithm::QuadraticTR, 80);
  spec.mode = AdjustmentSet::Mode::FMS;
  const CalibrationResult result =
      calibrate(fc.land, fc.weather, fc.ignition, observed, spec);
  CHECK(result.opt.x_best.size() == 32);
  CHECK(result.x_star.per_fuel.size() == 8);
  CHECK(result.final_error <= result.initial_error);
}

TEST_CASE("replicating a global optimum across fuels reproduces its objective value") {
  const auto fc = fixtures::multi8();
  const ScarSeries observed = fc.target();
  const std::vector<double> mu(observed.size(), 1.0 / static_cast<double>(observed.size()));

  Objective global = make_objective(fc.land, fc.weather, fc.ignition, observed, mu,
                                    AdjustmentSet::Mode::Global);
  Objective fms = make_objective(fc.land, fc.weather, fc.ignition, observed, mu,
                                 AdjustmentSet::Mode::FMS);

  const std::vector<double> x{1.2, 0.95, 1.4, 1.05};
  std::vector<double> replicated;
  for (int i = 0; i < 8; ++i) {
    replicated.insert(replicated.end(), x.begin(), x.end());
  }
  const double gv = global(x);
  const double fv = fms(replicated);
  CHECK(std::abs(gv - fv) <= 1e-12);
}

TEST_CASE("realtime calibration warm-starts from the previous optimum") {
  const auto fc = fixtures::homog20();

  SECTION("a stream equal to the baseline keeps the identity") {
    const ScarSeries stream = simulate(fc.land, fc.weather, fc.ignition,
                                       AdjustmentSet::identity(), fc.horizon, fc.report_every);
    CalibrationSpec spec = quick_spec(1, Algorithm::PatternSearch, 30);
    const auto steps = realtime_calibrate(fc.land, fc.weather, fc.ignition, stream, spec);
    REQUIRE(steps.size() == 7);
    for (const auto& step : steps) {
      CHECK(step.result.initial_error == 0.0);
      CHECK(step.result.final_error == 0.0);
      CHECK(step.result.x_star == AdjustmentSet::identity());
      CHECK(step.one_step_ahead_error == 0.0);
    }
  }

  SECTION("per-step final error never exceeds the warm-start error") {
    const ScarSeries stream = fc.target();
    CalibrationSpec spec = quick_spec(1, Algorithm::QuadraticTR, 40);
    const auto steps = realtime_calibrate(fc.land, fc.weather, fc.ignition, stream, spec);
    REQUIRE(steps.size() == 7);
    AdjustmentSet previous = AdjustmentSet::identity();
    for (std::size_t t = 0; t < steps.size(); ++t) {
      const auto& step = steps[t];
      CHECK(step.result.final_error <= step.result.initial_error + 1e-12);

      // the first evaluation of step t is exactly the previous optimum
      ScarSeries seen;
      seen.grids.assign(stream.grids.begin(), stream.grids.begin() + t + 1);
      seen.timestamps.assign(stream.timestamps.begin(), stream.timestamps.begin() + t + 1);
      const std::vector<double> mu(t + 1, 1.0 / static_cast<double>(t + 1));
      Objective probe = make_objective(fc.land, fc.weather, fc.ignition, seen, mu,
                                       AdjustmentSet::Mode::Global);
      CHECK(step.result.initial_error ==
            Catch::Approx(probe(previous.flatten())).margin(1e-12));
      CHECK(step.result.opt.trace.front().first == 1);
      CHECK(step.result.opt.trace.front().second ==
            Catch::Approx(step.result.initial_error).margin(1e-12));
      previous = step.result.x_star;
    }
  }

  SECTION("empty stream is rejected") {
    CalibrationSpec spec = quick_spec(1, Algorithm::PatternSearch, 10);
    CHECK_THROWS_AS(
        realtime_calibrate(fc.land, fc.weather, fc.ignition, ScarSeries{}, spec),
        std::invalid_argument);
  }
}

TEST_CASE("benchmark tabulates all algorithms against one instance") {
  const auto fc = fixtures::homog20();
  const CalibrationInstance instance = fc.instance();
  CalibrationSpec spec = quick_spec(instance.observed.size(), Algorithm::QuadraticTR, 60);

  const BenchTable table = run_benchmark(
      instance, {Algorithm::NelderMead, Algorithm::PatternSearch, Algorithm::QuadraticTR},
      spec);
  REQUIRE(table.rows.size() == 3);
  for (const auto& row : table.rows) {
    CHECK(row.neval <= 60);
    CHECK(row.min_value <= row.initial_value);
    CHECK(row.runtime_min >= 0.0);
  }
  CHECK(table.rows[0].algorithm == "nelder-mead");
  CHECK(table.to_csv().starts_with("algorithm,neval,runtime_min,min_value,initial_value\n"));

  CHECK_THROWS_AS(run_benchmark(instance, {}, spec), std::invalid_argument);
}

TEST_CASE("calibrate validates its configuration") {
  const auto fc = fixtures::five_grid();
  const ScarSeries observed =
      simulate(fc.land, fc.weather, fc.ignition, AdjustmentSet::identity(), 7.0, 1.0);

  SECTION("empty budget") {
    CalibrationSpec spec = quick_spec(observed.size(), Algorithm::NelderMead, 0);
    CHECK_THROWS_AS(calibrate(fc.land, fc.weather, fc.ignition, observed, spec),
                    std::invalid_argument);
  }
  SECTION("start point outside the factor bounds") {
    CalibrationSpec spec = quick_spec(observed.size(), Algorithm::NelderMead, 10);
    spec.x0 = AdjustmentSet::global(FactorTuple{20.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(calibrate(fc.land, fc.weather, fc.ignition, observed, spec),
                    std::invalid_argument);
  }
  SECTION("weight length mismatch") {
    CalibrationSpec spec = quick_spec(observed.size() + 1, Algorithm::NelderMead, 10);
    CHECK_THROWS_AS(calibrate(fc.land, fc.weather, fc.ignition, observed, spec),
                    std::invalid_argument);
  }
}

TEST_CASE("unconstrained calibration leans on the +infinity sentinel") {
  const auto fc = fixtures::homog20();
  const ScarSeries observed = fc.target();
  CalibrationSpec spec = quick_spec(observed.size(), Algorithm::QuadraticTR, 120);
  spec.constrain_optimizer = false;  // NEWUOA-style mode
  const CalibrationResult result =
      calibrate(fc.land, fc.weather, fc.ignition, observed, spec);
  CHECK(result.final_error <= result.initial_error);
  // every decoded factor of the result is still inside the feasible box
  const auto flat = result.x_star.flatten();
  for (double v : flat) {
    CHECK(v >= spec.factor_bounds.first);
    CHECK(v <= spec.factor_bounds.second);
  }
}
