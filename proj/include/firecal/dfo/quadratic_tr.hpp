#pragma once

// Quadratic-interpolation trust-region minimization. A quadratic surrogate
// interpolates the objective at m points (default 2n+1); the surplus degrees
// of freedom are fixed by minimizing the Frobenius norm of the Hessian change
// between consecutive iterations. The surrogate is minimized inside the trust
// region (intersected with the box when bounds are present) by a projected
// truncated conjugate-gradient solve. Without bounds this behaves like an
// unconstrained model-based method; with bounds every evaluated point stays
// inside the box.
//
// Radius control is the classic ratio test: shrink by 0.5 when the ratio of
// actual to predicted reduction falls below 0.1, grow by up to 2 (capped by
// the step length) when it exceeds 0.7. Interpolation-set degeneracy is
// repaired by replacing the point furthest from the trust-region center.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "firecal/dfo/detail/linalg.hpp"
#include "firecal/dfo/options.hpp"

namespace firecal::dfo {

namespace detail {

// Quadratic model c + g.d + d.H.d/2 around the current center.
struct QuadraticModel {
  std::vector<double> center;
  double c = 0.0;
  std::vector<double> g;
  SquareMatrix h;

  explicit QuadraticModel(std::size_t n) : center(n, 0.0), g(n, 0.0), h(n) {}

  double value(const std::vector<double>& x) const {
    const std::size_t n = center.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = x[i] - center[i];
    }
    double v = c + dot(g, d);
    for (std::size_t i = 0; i < n; ++i) {
      double hd = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        hd += h(i, j) * d[j];
      }
      v += 0.5 * d[i] * hd;
    }
    return v;
  }

  void recenter(const std::vector<double>& new_center) {
    const std::size_t n = center.size();
    std::vector<double> shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = new_center[i] - center[i];
    }
    c = value(new_center);
    for (std::size_t i = 0; i < n; ++i) {
      double hs = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        hs += h(i, j) * shift[j];
      }
      g[i] += hs;
    }
    center = new_center;
  }
};

// KKT system of the minimum-Frobenius-change interpolation: bordered matrix
// [A P; P^T 0] with A_ij = ((y_i-c).(y_j-c))^2 / 2 and P_i = [1, (y_i-c)^T].
inline SquareMatrix interpolation_matrix(const std::vector<std::vector<double>>& points,
                                         const std::vector<double>& center) {
  const std::size_t m = points.size();
  const std::size_t n = center.size();
  SquareMatrix w(m + n + 1);
  std::vector<std::vector<double>> d(m, std::vector<double>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = points[i][j] - center[j];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double p = dot(d[i], d[j]);
      w(i, j) = 0.5 * p * p;
    }
    w(i, m) = 1.0;
    w(m, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      w(i, m + 1 + j) = d[i][j];
      w(m + 1 + j, i) = d[i][j];
    }
  }
  return w;
}

// Minimizes the model inside the trust region and the box via projected
// truncated CG. Returns the step relative to the model center.
inline std::vector<double> solve_tr_subproblem(const QuadraticModel& model, double radius,
                                               const std::optional<Bounds>& bounds) {
  const std::size_t n = model.center.size();
  std::vector<double> s(n, 0.0);
  std::vector<double> slo(n, -std::numeric_limits<double>::infinity());
  std::vector<double> shi(n, std::numeric_limits<double>::infinity());
  if (bounds) {
    for (std::size_t i = 0; i < n; ++i) {
      slo[i] = bounds->lo[i] - model.center[i];
      shi[i] = bounds->hi[i] - model.center[i];
    }
  }
  std::vector<bool> fixed(n, false);

  const auto model_grad = [&](const std::vector<double>& step) {
    std::vector<double> grad = model.g;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        grad[i] += model.h(i, j) * step[j];
      }
    }
    return grad;
  };

  // Crossing the sphere ||s + alpha p|| = radius.
  const auto alpha_to_sphere = [&](const std::vector<double>& p) {
    const double pp = dot(p, p);
    if (pp == 0.0) {
      return 0.0;
    }
    const double sp = dot(s, p);
    const double ss = dot(s, s);
    const double disc = sp * sp + pp * (radius * radius - ss);
    return (-sp + std::sqrt(std::max(0.0, disc))) / pp;
  };

  for (std::size_t restart = 0; restart <= n; ++restart) {
    std::vector<double> grad = model_grad(s);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Fix coordinates resting on a bound the model pushes against.
      if (!fixed[i] && ((s[i] <= slo[i] && grad[i] > 0.0) || (s[i] >= shi[i] && grad[i] < 0.0))) {
        fixed[i] = true;
      }
      r[i] = fixed[i] ? 0.0 : -grad[i];
    }
    const double gnorm0 = norm2(r);
    if (gnorm0 < 1e-14 * std::max(1.0, norm2(model.g))) {
      break;
    }

    std::vector<double> p = r;
    double rr = dot(r, r);
    bool hit_boundary = false;
    bool restart_needed = false;
    for (std::size_t iter = 0; iter < 4 * n + 8; ++iter) {
      std::vector<double> hp(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (fixed[i]) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (!fixed[j]) {
            hp[i] += model.h(i, j) * p[j];
          }
        }
      }
      const double php = dot(p, hp);
      double alpha = php > 0.0 ? rr / php : std::numeric_limits<double>::infinity();

      double limit = alpha_to_sphere(p);
      int blocking = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (fixed[i] || p[i] == 0.0) {
          continue;
        }
        const double bound = p[i] > 0.0 ? shi[i] : slo[i];
        const double a = (bound - s[i]) / p[i];
        if (a < limit) {
          limit = a;
          blocking = static_cast<int>(i);
        }
      }
      limit = std::max(0.0, limit);

      if (alpha >= limit) {
        for (std::size_t i = 0; i < n; ++i) {
          s[i] += limit * p[i];
        }
        if (blocking >= 0) {
          s[blocking] = p[blocking] > 0.0 ? shi[blocking] : slo[blocking];
          fixed[blocking] = true;
          restart_needed = true;
        } else {
          hit_boundary = true;  // trust-region sphere
        }
        break;
      }

      for (std::size_t i = 0; i < n; ++i) {
        s[i] += alpha * p[i];
        r[i] -= alpha * hp[i];
      }
      const double rr_new = dot(r, r);
      if (std::sqrt(rr_new) < 1e-14 * std::max(1.0, gnorm0)) {
        break;
      }
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = r[i] + beta * p[i];
      }
    }
    if (hit_boundary || !restart_needed) {
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::clamp(s[i], slo[i], shi[i]);
  }
  return s;
}

}  // namespace detail

template <typename F>
OptResult minimize_quadratic_tr(F&& f, std::vector<double> x0, const OptOptions& opts = {}) {
  using detail::dot;
  using detail::norm2;

  const std::size_t n = x0.size();
  if (n < 1) {
    throw std::invalid_argument("dimension must be >= 1");
  }
  const int m_max = static_cast<int>((n + 1) * (n + 2) / 2);
  const int m = opts.m_points == 0 ? static_cast<int>(2 * n + 1) : opts.m_points;
  if (m < static_cast<int>(n) + 2 || m > m_max) {
    throw std::invalid_argument("m_points must lie in [n+2, (n+1)(n+2)/2]");
  }
  if (opts.bounds) {
    opts.bounds->validate(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (opts.bounds->hi[i] - opts.bounds->lo[i] < 1e-12) {
        throw std::invalid_argument("degenerate bounds");
      }
    }
    opts.bounds->clip(x0);
  }

  detail::Evaluator<std::remove_reference_t<F>> ev(f, opts);

  double radius = opts.initial_tr_radius;
  if (opts.bounds) {
    for (std::size_t i = 0; i < n; ++i) {
      radius = std::min(radius, 0.5 * (opts.bounds->hi[i] - opts.bounds->lo[i]));
    }
  }

  std::vector<std::vector<double>> points;
  std::vector<double> fvals;
  points.reserve(m);
  fvals.reserve(m);

  const auto in_box = [&](const std::vector<double>& x) {
    return !opts.bounds || opts.bounds->contains(x);
  };

  const auto is_usable = [&](const std::vector<double>& x) {
    if (!in_box(x)) {
      return false;
    }
    for (const auto& p : points) {
      double dn = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        dn += (p[j] - x[j]) * (p[j] - x[j]);
      }
      if (std::sqrt(dn) < 1e-12) {
        return false;
      }
    }
    return true;
  };

  // Evaluates x0 + offset * e_coord, backing off deterministically if the
  // objective is not finite there (e.g. the point crosses a feasibility
  // wall): both signs are tried at shrinking magnitudes. Returns false only
  // when the budget ran out.
  const auto sample_coordinate_point = [&](std::size_t coord, double offset) -> bool {
    const double sign = offset >= 0.0 ? 1.0 : -1.0;
    double magnitude = std::abs(offset);
    for (int attempt = 0; attempt < 80; ++attempt) {
      const double o = (attempt % 2 == 0 ? sign : -sign) * magnitude;
      std::vector<double> x = points[0];
      x[coord] += o;
      if (is_usable(x)) {
        if (ev.exhausted()) {
          return false;
        }
        const double fx = ev.eval(x);
        if (std::isfinite(fx)) {
          points.push_back(std::move(x));
          fvals.push_back(fx);
          return true;
        }
      }
      if (attempt % 2 == 1) {
        magnitude *= 0.5;
      }
    }
    throw std::invalid_argument("objective is not finite near the start point");
  };

  points.push_back(x0);
  fvals.push_back(ev.eval(points[0]));
  if (!std::isfinite(fvals[0])) {
    throw std::invalid_argument("objective is not finite at the start point");
  }

  const auto room_aware_offsets = [&](std::size_t i) {
    double o1 = radius, o2 = -radius;
    if (opts.bounds) {
      const double room_plus = opts.bounds->hi[i] - points[0][i];
      const double room_minus = points[0][i] - opts.bounds->lo[i];
      if (room_plus < radius && room_minus < radius) {
        o1 = room_plus;
        o2 = -room_minus;
      } else if (room_plus < radius) {
        o1 = -radius;
        o2 = -std::min(2.0 * radius, room_minus);
        if (std::abs(o2 - o1) < 1e-12) {
          o2 = -0.5 * radius;
        }
      } else if (room_minus < radius) {
        o1 = radius;
        o2 = std::min(2.0 * radius, room_plus);
        if (std::abs(o2 - o1) < 1e-12) {
          o2 = 0.5 * radius;
        }
      }
    }
    return std::pair{o1, o2};
  };

  for (std::size_t i = 0; i < n && static_cast<int>(points.size()) < m; ++i) {
    if (!sample_coordinate_point(i, room_aware_offsets(i).first)) {
      return ev.finish(ev.budget_reason());
    }
  }
  for (std::size_t i = 0; i < n && static_cast<int>(points.size()) < m; ++i) {
    if (!sample_coordinate_point(i, room_aware_offsets(i).second)) {
      return ev.finish(ev.budget_reason());
    }
  }
  // Cross terms for m beyond 2n+1.
  for (std::size_t i = 0; i < n && static_cast<int>(points.size()) < m; ++i) {
    for (std::size_t j = i + 1; j < n && static_cast<int>(points.size()) < m; ++j) {
      std::vector<double> x = points[0];
      x[i] += room_aware_offsets(i).first;
      x[j] += room_aware_offsets(j).first;
      if (opts.bounds) {
        opts.bounds->clip(x);
      }
      if (ev.exhausted()) {
        return ev.finish(ev.budget_reason());
      }
      const double fx = ev.eval(x);
      points.push_back(std::move(x));
      fvals.push_back(std::isfinite(fx) ? fx : 1e30);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (fvals[i] < fvals[best]) {
      best = i;
    }
  }

  detail::QuadraticModel model(n);
  model.center = points[best];
  model.c = fvals[best];

  std::size_t geometry_cycle = 0;

  // Fits the model to interpolate all points, changing the Hessian as little
  // as possible. Returns false when the interpolation system is degenerate.
  const auto refit = [&]() -> bool {
    const std::size_t mm = points.size();
    detail::SquareMatrix w = detail::interpolation_matrix(points, model.center);
    detail::LuFactor lu(std::move(w));
    if (lu.singular()) {
      return false;
    }
    std::vector<double> rhs(mm + n + 1, 0.0);
    for (std::size_t i = 0; i < mm; ++i) {
      rhs[i] = fvals[i] - model.value(points[i]);
    }
    const std::vector<double> sol = lu.solve(std::move(rhs));
    model.c += sol[mm];
    for (std::size_t j = 0; j < n; ++j) {
      model.g[j] += sol[mm + 1 + j];
    }
    for (std::size_t i = 0; i < mm; ++i) {
      const double lambda = sol[i];
      if (lambda == 0.0) {
        continue;
      }
      std::vector<double> d(n);
      for (std::size_t j = 0; j < n; ++j) {
        d[j] = points[i][j] - model.center[j];
      }
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          model.h(r, c) += lambda * d[r] * d[c];
        }
      }
    }
    return true;
  };

  const auto furthest_point = [&]() {
    std::size_t idx = best == 0 ? 1 : 0;
    double dist = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == best) {
        continue;
      }
      std::vector<double> d(n);
      for (std::size_t j = 0; j < n; ++j) {
        d[j] = points[i][j] - model.center[j];
      }
      const double dn = norm2(d);
      if (dn > dist) {
        dist = dn;
        idx = i;
      }
    }
    return std::pair{idx, dist};
  };

  enum class Geometry { Replaced, NothingToDo, OutOfBudget };

  // Replaces the furthest point with a fresh axis offset from the center to
  // restore a usable interpolation geometry. Tries both signs on every
  // coordinate, starting from a rotating offset so repeated calls explore
  // different directions.
  const auto geometry_step = [&](double scale) -> Geometry {
    const std::size_t victim = furthest_point().first;
    for (std::size_t attempt = 0; attempt < 2 * n; ++attempt) {
      const std::size_t k = (geometry_cycle + attempt) % (2 * n);
      const std::size_t coord = k % n;
      const double sign = k < n ? 1.0 : -1.0;
      std::vector<double> x = model.center;
      x[coord] += sign * scale;
      if (opts.bounds) {
        opts.bounds->clip(x);
      }
      if (!is_usable(x)) {
        continue;
      }
      if (ev.exhausted()) {
        return Geometry::OutOfBudget;
      }
      const double fx = ev.eval(x);
      if (!std::isfinite(fx)) {
        continue;
      }
      geometry_cycle = k + 1;
      points[victim] = std::move(x);
      fvals[victim] = fx;
      if (fx < fvals[best]) {
        best = victim;
        model.recenter(points[best]);
      }
      return Geometry::Replaced;
    }
    ++geometry_cycle;
    return Geometry::NothingToDo;
  };

  if (!refit()) {
    if (geometry_step(radius) == Geometry::OutOfBudget) {
      return ev.finish(ev.budget_reason());
    }
    refit();  // the main loop repairs further if still degenerate
  }

  while (true) {
    if (radius < opts.xtol_abs) {
      return ev.finish(Termination::XTol);
    }
    if (ev.exhausted()) {
      return ev.finish(ev.budget_reason());
    }

    const std::vector<double> step = detail::solve_tr_subproblem(model, radius, opts.bounds);
    const double snorm = norm2(step);

    if (snorm < 1e-2 * radius) {
      // The model is locally optimal at this radius: tighten or fix geometry.
      const double dist = furthest_point().second;
      Geometry outcome = Geometry::NothingToDo;
      if (dist > 2.0 * radius) {
        outcome = geometry_step(radius);
        if (outcome == Geometry::OutOfBudget) {
          return ev.finish(ev.budget_reason());
        }
        if (outcome == Geometry::Replaced && !refit()) {
          model = detail::QuadraticModel(n);
          model.center = points[best];
          model.c = fvals[best];
          refit();
        }
      }
      if (outcome == Geometry::NothingToDo) {
        radius *= 0.5;
      }
      continue;
    }

    std::vector<double> candidate(n);
    for (std::size_t i = 0; i < n; ++i) {
      candidate[i] = model.center[i] + step[i];
    }
    if (opts.bounds) {
      opts.bounds->clip(candidate);
    }
    const double predicted = fvals[best] - model.value(candidate);
    const double f_candidate = ev.eval(candidate);
    const double actual = fvals[best] - f_candidate;
    const double ratio = predicted > 0.0 ? actual / predicted : (actual > 0.0 ? 1.0 : -1.0);

    bool repair_geometry = false;
    if (ratio < 0.1) {
      // A failed step with stale far points is a geometry problem, not a
      // radius problem; only shrink once the set hugs the trust region.
      if (furthest_point().second > 2.0 * radius) {
        repair_geometry = true;
      } else {
        radius *= 0.5;
      }
    } else if (ratio > 0.7) {
      radius = std::min(2.0 * radius, std::max(radius, 2.0 * snorm));
    }

    if (std::isfinite(f_candidate)) {
      // Lagrange values of the candidate decide which point it replaces.
      detail::SquareMatrix w = detail::interpolation_matrix(points, model.center);
      detail::LuFactor lu(std::move(w));
      std::size_t victim = points.size();
      if (!lu.singular()) {
        const std::size_t mm = points.size();
        std::vector<double> phi(mm + n + 1, 0.0);
        std::vector<double> dc(n);
        for (std::size_t j = 0; j < n; ++j) {
          dc[j] = candidate[j] - model.center[j];
        }
        for (std::size_t i = 0; i < mm; ++i) {
          std::vector<double> d(n);
          for (std::size_t j = 0; j < n; ++j) {
            d[j] = points[i][j] - model.center[j];
          }
          const double p = dot(d, dc);
          phi[i] = 0.5 * p * p;
        }
        phi[mm] = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
          phi[mm + 1 + j] = dc[j];
        }
        const std::vector<double> lagrange = lu.solve(std::move(phi));
        double score_best = 0.0;
        for (std::size_t i = 0; i < mm; ++i) {
          if (i == best) {
            continue;
          }
          std::vector<double> d(n);
          for (std::size_t j = 0; j < n; ++j) {
            d[j] = points[i][j] - model.center[j];
          }
          const double weight = std::max(1.0, std::pow(norm2(d) / std::max(radius, 1e-30), 3));
          const double score = std::abs(lagrange[i]) * weight;
          if (score > score_best) {
            score_best = score;
            victim = i;
          }
        }
        if (f_candidate >= fvals[best] && score_best < 1e-8) {
          victim = points.size();  // adds no information; discard
        }
      } else {
        victim = furthest_point().first;
      }

      if (victim < points.size()) {
        points[victim] = candidate;
        fvals[victim] = f_candidate;
        if (f_candidate < fvals[best]) {
          best = victim;
          model.recenter(points[best]);
        }
        if (!refit()) {
          if (geometry_step(radius) == Geometry::OutOfBudget) {
            return ev.finish(ev.budget_reason());
          }
          if (!refit()) {
            model = detail::QuadraticModel(n);
            model.center = points[best];
            model.c = fvals[best];
            refit();
          }
        }
      }
    }

    if (repair_geometry) {
      const Geometry outcome = geometry_step(radius);
      if (outcome == Geometry::OutOfBudget) {
        return ev.finish(ev.budget_reason());
      }
      if (outcome == Geometry::NothingToDo) {
        radius *= 0.5;
      } else if (!refit()) {
        model = detail::QuadraticModel(n);
        model.center = points[best];
        model.c = fvals[best];
        refit();
      }
    }
  }
}

}  // namespace firecal::dfo
