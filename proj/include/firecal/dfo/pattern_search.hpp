#pragma once

// Coordinate pattern search: poll +-step along each axis in index order,
// accept the first strict improvement, halve the step when a full poll
// fails. Poll points outside the bounds are skipped, not clipped, so every
// evaluated point is feasible.

#include <cmath>
#include <vector>

#include "firecal/dfo/options.hpp"

namespace firecal::dfo {

template <typename F>
OptResult minimize_pattern_search(F&& f, std::vector<double> x0, const OptOptions& opts = {}) {
  const std::size_t n = x0.size();
  if (n < 1) {
    throw std::invalid_argument("dimension must be >= 1");
  }
  if (opts.bounds) {
    opts.bounds->validate(n);
    opts.bounds->clip(x0);
  }
  detail::Evaluator<std::remove_reference_t<F>> ev(f, opts);

  std::vector<double> x = std::move(x0);
  double fx = ev.eval(x);
  if (!std::isfinite(fx)) {
    throw std::invalid_argument("objective is not finite at the start point");
  }

  double step = 0.25;
  while (step >= opts.xtol_abs) {
    bool improved = false;
    for (std::size_t i = 0; i < n && !improved; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> candidate = x;
        candidate[i] += sign * step;
        if (opts.bounds &&
            (candidate[i] < opts.bounds->lo[i] || candidate[i] > opts.bounds->hi[i])) {
          continue;
        }
        if (ev.exhausted()) {
          return ev.finish(ev.budget_reason());
        }
        const double fc = ev.eval(candidate);
        if (fc < fx) {
          x = std::move(candidate);
          fx = fc;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
  }
  return ev.finish(Termination::XTol);
}

}  // namespace firecal::dfo
