#pragma once

// Nelder-Mead simplex minimization with the classic coefficients: reflection
// 1, expansion 2, contraction 0.5, shrink 0.5. The initial simplex places one
// vertex at x0 and perturbs each coordinate by 0.05 * max(|x0_i|, 1). With
// bounds, candidate points are clipped into the box before evaluation and
// stored clipped. Ties are broken by the lowest vertex index so runs are
// bit-reproducible.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "firecal/dfo/options.hpp"

namespace firecal::dfo {

template <typename F>
OptResult minimize_nelder_mead(F&& f, std::vector<double> x0, const OptOptions& opts = {}) {
  const std::size_t n = x0.size();
  if (n < 1) {
    throw std::invalid_argument("dimension must be >= 1");
  }
  if (opts.bounds) {
    opts.bounds->validate(n);
  }
  detail::Evaluator<std::remove_reference_t<F>> ev(f, opts);

  const auto clip = [&](std::vector<double> x) {
    if (opts.bounds) {
      opts.bounds->clip(x);
    }
    return x;
  };

  std::vector<std::vector<double>> verts;
  std::vector<double> fvals;
  verts.push_back(clip(std::move(x0)));
  fvals.push_back(ev.eval(verts[0]));
  if (!std::isfinite(fvals[0])) {
    throw std::invalid_argument("objective is not finite at the start point");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v = verts[0];
    v[i] += 0.05 * std::max(std::abs(v[i]), 1.0);
    verts.push_back(clip(std::move(v)));
    if (ev.exhausted()) {
      return ev.finish(ev.budget_reason());
    }
    fvals.push_back(ev.eval(verts.back()));
  }

  // order[0] = best vertex; stable sort keeps the lowest index on ties.
  std::vector<std::size_t> order(n + 1);
  const auto reorder = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
  };

  while (true) {
    reorder();
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        diameter = std::max(diameter, std::abs(verts[i][j] - verts[best][j]));
      }
    }
    if (diameter < opts.xtol_abs) {
      return ev.finish(Termination::XTol);
    }
    if (ev.exhausted()) {
      return ev.finish(ev.budget_reason());
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        centroid[j] += verts[i][j];
      }
    }
    for (double& c : centroid) {
      c /= static_cast<double>(n);
    }

    const auto transformed = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = centroid[j] + coeff * (centroid[j] - verts[worst][j]);
      }
      return clip(std::move(x));
    };

    std::vector<double> reflected = transformed(1.0);
    const double f_reflected = ev.eval(reflected);

    if (f_reflected < fvals[best]) {
      if (ev.exhausted()) {
        return ev.finish(ev.budget_reason());
      }
      std::vector<double> expanded = transformed(2.0);
      const double f_expanded = ev.eval(expanded);
      if (f_expanded < f_reflected) {
        verts[worst] = std::move(expanded);
        fvals[worst] = f_expanded;
      } else {
        verts[worst] = std::move(reflected);
        fvals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fvals[second_worst]) {
      verts[worst] = std::move(reflected);
      fvals[worst] = f_reflected;
      continue;
    }

    if (ev.exhausted()) {
      return ev.finish(ev.budget_reason());
    }
    bool contracted = false;
    if (f_reflected < fvals[worst]) {
      // outside contraction
      std::vector<double> outside = transformed(0.5);
      const double f_outside = ev.eval(outside);
      if (f_outside <= f_reflected) {
        verts[worst] = std::move(outside);
        fvals[worst] = f_outside;
        contracted = true;
      }
    } else {
      // inside contraction
      std::vector<double> inside = transformed(-0.5);
      const double f_inside = ev.eval(inside);
      if (f_inside < fvals[worst]) {
        verts[worst] = std::move(inside);
        fvals[worst] = f_inside;
        contracted = true;
      }
    }
    if (contracted) {
      continue;
    }

    // shrink toward the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        verts[i][j] = verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
      }
      verts[i] = clip(std::move(verts[i]));
      if (ev.exhausted()) {
        return ev.finish(ev.budget_reason());
      }
      fvals[i] = ev.eval(verts[i]);
    }
  }
}

}  // namespace firecal::dfo
