#pragma once

// Assembles and solves the rate-of-spread adjustment-factor problem: global
// or fuel-model-specific factor fitting against an observed scar series, the
// hour-by-hour real-time warm-start protocol, and a small benchmark harness
// over the available optimizers.

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "firecal/dfo/nelder_mead.hpp"
#include "firecal/dfo/pattern_search.hpp"
#include "firecal/dfo/quadratic_tr.hpp"
#include "firecal/objective.hpp"

namespace firecal {

enum class Algorithm { NelderMead, PatternSearch, QuadraticTR };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::NelderMead: return "nelder-mead";
    case Algorithm::PatternSearch: return "pattern-search";
    case Algorithm::QuadraticTR: return "quadratic-tr";
  }
  return "unknown";
}

inline Algorithm algorithm_from_string(const std::string& name) {
  if (name == "nelder-mead") return Algorithm::NelderMead;
  if (name == "pattern-search") return Algorithm::PatternSearch;
  if (name == "quadratic-tr") return Algorithm::QuadraticTR;
  throw std::invalid_argument("unknown algorithm: " + name);
}

struct CalibrationSpec {
  AdjustmentSet::Mode mode = AdjustmentSet::Mode::Global;
  std::vector<double> mu;  // one weight per observed period
  Algorithm algorithm = Algorithm::QuadraticTR;
  dfo::OptOptions opts;
  // Start point; all-ones when unset.
  std::optional<AdjustmentSet> x0;
  // Feasible box per factor. Queries outside it score +infinity; when
  // constrain_optimizer is set the optimizer also receives it as bounds.
  std::pair<double, double> factor_bounds{0.01, 10.0};
  bool constrain_optimizer = true;
  ScarNorm norm = ScarNorm::Frobenius;
  double dt = 1.0;
};

struct CalibrationResult {
  AdjustmentSet x_star;
  double initial_error = 0.0;  // objective at the start point
  double final_error = 0.0;    // objective at x_star
  dfo::OptResult opt;
};

struct CalibrationInstance {
  Landscape land;
  WeatherStream weather;
  IgnitionSpec ignition;
  ScarSeries observed;
};

inline CalibrationResult calibrate(const Landscape& land, const WeatherStream& weather,
                                   const IgnitionSpec& ign, const ScarSeries& observed,
                                   const CalibrationSpec& spec) {
  ObjectiveConfig cfg;
  cfg.norm = spec.norm;
  cfg.dt = spec.dt;
  cfg.factor_box = spec.factor_bounds;
  Objective objective =
      make_objective(land, weather, ign, observed, spec.mu, spec.mode, cfg);

  const std::vector<int> fuel_ids = land.fuel_ids();
  AdjustmentSet start = spec.x0.value_or(
      spec.mode == AdjustmentSet::Mode::Global
          ? AdjustmentSet::identity()
          : AdjustmentSet::decode(AdjustmentSet::Mode::FMS, fuel_ids,
                                  std::vector<double>(4 * fuel_ids.size(), 1.0)));
  const std::vector<double> x0 = start.flatten();
  if (static_cast<int>(x0.size()) != objective.dim()) {
    throw std::invalid_argument("start point does not match the calibration mode");
  }
  for (double v : x0) {
    if (v < spec.factor_bounds.first || v > spec.factor_bounds.second) {
      throw std::invalid_argument("start point lies outside the factor bounds");
    }
  }

  dfo::OptOptions opts = spec.opts;
  if (spec.constrain_optimizer && !opts.bounds) {
    opts.bounds =
        dfo::Bounds::uniform(x0.size(), spec.factor_bounds.first, spec.factor_bounds.second);
  }

  dfo::OptResult opt;
  switch (spec.algorithm) {
    case Algorithm::NelderMead:
      opt = dfo::minimize_nelder_mead(objective, x0, opts);
      break;
    case Algorithm::PatternSearch:
      opt = dfo::minimize_pattern_search(objective, x0, opts);
      break;
    case Algorithm::QuadraticTR:
      opt = dfo::minimize_quadratic_tr(objective, x0, opts);
      break;
  }

  CalibrationResult result;
  result.x_star = AdjustmentSet::decode(spec.mode, fuel_ids, opt.x_best);
  result.initial_error = opt.trace.front().second;
  result.final_error = opt.f_best;
  result.opt = std::move(opt);
  return result;
}

inline CalibrationResult calibrate(const CalibrationInstance& instance,
                                   const CalibrationSpec& spec) {
  return calibrate(instance.land, instance.weather, instance.ignition, instance.observed, spec);
}

struct RealtimeStep {
  int t = 0;  // 1-based period index
  // Error of the previous optimum against the newly arrived scar alone,
  // before re-fitting (the one-step-ahead prediction error).
  double one_step_ahead_error = 0.0;
  CalibrationResult result;
};

// Hour-by-hour protocol: at step t, fit against scars 1..t with weights 1/t
// each, warm-starting from the previous optimum. spec.mu is ignored; the
// per-step weights are always uniform over the scars seen so far.
inline std::vector<RealtimeStep> realtime_calibrate(const Landscape& land,
                                                    const WeatherStream& weather,
                                                    const IgnitionSpec& ign,
                                                    const ScarSeries& scar_stream,
                                                    const CalibrationSpec& spec) {
  scar_stream.validate();
  if (scar_stream.empty()) {
    throw std::invalid_argument("scar stream is empty");
  }

  const std::vector<int> fuel_ids = land.fuel_ids();
  AdjustmentSet incumbent = spec.x0.value_or(
      spec.mode == AdjustmentSet::Mode::Global
          ? AdjustmentSet::identity()
          : AdjustmentSet::decode(AdjustmentSet::Mode::FMS, fuel_ids,
                                  std::vector<double>(4 * fuel_ids.size(), 1.0)));

  std::vector<RealtimeStep> steps;
  for (std::size_t t = 1; t <= scar_stream.size(); ++t) {
    ScarSeries seen;
    seen.grids.assign(scar_stream.grids.begin(), scar_stream.grids.begin() + t);
    seen.timestamps.assign(scar_stream.timestamps.begin(), scar_stream.timestamps.begin() + t);

    RealtimeStep step;
    step.t = static_cast<int>(t);
    {
      const ScarSeries predicted =
          simulate(land, weather, ign, incumbent, seen.timestamps.back(),
                   seen.timestamps.front(), spec.dt);
      step.one_step_ahead_error =
          grid_norm(predicted.grids.back(), seen.grids.back(), spec.norm);
    }

    CalibrationSpec step_spec = spec;
    step_spec.mu.assign(t, 1.0 / static_cast<double>(t));
    step_spec.x0 = incumbent;
    step.result = calibrate(land, weather, ign, seen, step_spec);
    incumbent = step.result.x_star;
    steps.push_back(std::move(step));
  }
  return steps;
}

struct BenchRow {
  std::string algorithm;
  long long neval = 0;
  double runtime_min = 0.0;
  double min_value = 0.0;
  double initial_value = 0.0;
};

struct BenchTable {
  std::vector<BenchRow> rows;

  std::string to_csv() const {
    std::ostringstream out;
    out << "algorithm,neval,runtime_min,min_value,initial_value\n";
    for (const auto& r : rows) {
      out << r.algorithm << "," << r.neval << "," << r.runtime_min << "," << r.min_value << ","
          << r.initial_value << "\n";
    }
    return out.str();
  }
};

// Runs every algorithm on the same calibration instance under a shared
// budget and tolerance and tabulates evaluations, runtime and the minimum
// objective value reached.
inline BenchTable run_benchmark(const CalibrationInstance& instance,
                                const std::vector<Algorithm>& algorithms,
                                const CalibrationSpec& spec) {
  if (algorithms.empty()) {
    throw std::invalid_argument("benchmark needs at least one algorithm");
  }
  BenchTable table;
  for (Algorithm algorithm : algorithms) {
    CalibrationSpec run_spec = spec;
    run_spec.algorithm = algorithm;
    const auto start = std::chrono::steady_clock::now();
    const CalibrationResult result = calibrate(instance, run_spec);
    const double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;
    table.rows.push_back(BenchRow{to_string(algorithm), result.opt.neval, minutes,
                                  result.final_error, result.initial_error});
  }
  return table;
}

}  // namespace firecal
