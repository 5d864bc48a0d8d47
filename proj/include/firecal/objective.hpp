#pragma once

// Instrumented black-box objective: decodes a flat decision vector, runs the
// simulator and scores the weighted scar-evolution error against an observed
// series. Infeasible queries (negative factors, points outside the factor
// box, or geometrically impossible ellipses) score +infinity instead of
// aborting the search.

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "firecal/metrics.hpp"
#include "firecal/simulator.hpp"

namespace firecal {

// Callable wrapper that counts every evaluation. Counts are shared across
// copies and safe under concurrent increments.
class Objective {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  Objective(int dim, Fn fn)
      : dim_(dim),
        fn_(std::move(fn)),
        evals_(std::make_shared<std::atomic<long long>>(0)),
        infeasible_(std::make_shared<std::atomic<long long>>(0)) {
    if (dim < 1) {
      throw std::invalid_argument("objective dimension must be >= 1");
    }
  }

  double operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) {
      throw std::invalid_argument("decision vector has wrong length");
    }
    evals_->fetch_add(1, std::memory_order_relaxed);
    const double value = fn_(x);
    if (std::isinf(value) && value > 0.0) {
      infeasible_->fetch_add(1, std::memory_order_relaxed);
    }
    return value;
  }

  int dim() const { return dim_; }
  long long evals() const { return evals_->load(std::memory_order_relaxed); }
  long long infeasible_evals() const { return infeasible_->load(std::memory_order_relaxed); }
  void reset_evals() {
    evals_->store(0, std::memory_order_relaxed);
    infeasible_->store(0, std::memory_order_relaxed);
  }

 private:
  int dim_;
  Fn fn_;
  std::shared_ptr<std::atomic<long long>> evals_;
  std::shared_ptr<std::atomic<long long>> infeasible_;
};

struct ObjectiveConfig {
  ScarNorm norm = ScarNorm::Frobenius;
  double dt = 1.0;
  // Feasible box per factor; queries outside it score +infinity.
  std::optional<std::pair<double, double>> factor_box;
};

// Builds the calibration black box. The observed series pins the report grid:
// timestamps must be (i+1) * delta for a uniform spacing delta.
inline Objective make_objective(const Landscape& land, const WeatherStream& weather,
                                const IgnitionSpec& ign, const ScarSeries& observed,
                                std::vector<double> mu, AdjustmentSet::Mode mode,
                                const ObjectiveConfig& cfg = {}) {
  observed.validate();
  if (observed.empty()) {
    throw std::invalid_argument("observed scar series is empty");
  }
  if (observed.grids.front().rows() != land.rows() ||
      observed.grids.front().cols() != land.cols()) {
    throw std::invalid_argument("observed scars do not match the landscape dimensions");
  }
  const double delta = observed.timestamps.front();
  if (!(delta > 0.0)) {
    throw std::invalid_argument("observed timestamps must start after 0");
  }
  for (std::size_t i = 0; i < observed.timestamps.size(); ++i) {
    if (std::abs(observed.timestamps[i] - static_cast<double>(i + 1) * delta) > 1e-6) {
      throw std::invalid_argument("observed timestamps are not aligned to a report grid");
    }
  }
  if (mu.size() != observed.size()) {
    throw std::invalid_argument("weight vector length does not match observed series");
  }

  struct Context {
    Landscape land;
    WeatherStream weather;
    IgnitionSpec ign;
    ScarSeries observed;
    std::vector<double> mu;
    std::vector<int> fuel_ids;
    AdjustmentSet::Mode mode;
    ObjectiveConfig cfg;
    double report_every;
    double horizon;
  };
  auto ctx = std::make_shared<Context>(Context{land, weather, ign, observed, std::move(mu),
                                               land.fuel_ids(), mode, cfg, delta,
                                               observed.timestamps.back()});

  const int dim = mode == AdjustmentSet::Mode::Global
                      ? 4
                      : 4 * static_cast<int>(ctx->fuel_ids.size());
  return Objective(dim, [ctx](std::span<const double> x) -> double {
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (double v : x) {
      if (!std::isfinite(v) || v < 0.0) {
        return inf;
      }
      if (ctx->cfg.factor_box &&
          (v < ctx->cfg.factor_box->first || v > ctx->cfg.factor_box->second)) {
        return inf;
      }
    }
    const AdjustmentSet set = AdjustmentSet::decode(ctx->mode, ctx->fuel_ids, x);
    try {
      const ScarSeries sim = simulate(ctx->land, ctx->weather, ctx->ign, set, ctx->horizon,
                                      ctx->report_every, ctx->cfg.dt);
      return weighted_error(sim, ctx->observed, ctx->mu, ctx->cfg.norm);
    } catch (const InfeasibleGeometryError&) {
      return inf;
    }
  });
}

}  // namespace firecal
