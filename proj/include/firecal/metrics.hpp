#pragma once

// Agreement metrics between simulated and observed burn grids.

#include <cmath>
#include <span>
#include <stdexcept>

#include "firecal/grid.hpp"

namespace firecal {

enum class ScarNorm { Frobenius, Hamming };

namespace metrics_detail {

inline void require_same_shape(const BurnGrid& a, const BurnGrid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("grid dimensions differ");
  }
}

}  // namespace metrics_detail

// Number of cells where the two grids disagree.
inline std::size_t hamming_error(const BurnGrid& a, const BurnGrid& b) {
  metrics_detail::require_same_shape(a, b);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += a.cells()[i] != b.cells()[i];
  }
  return diff;
}

// Frobenius norm of the difference matrix; each disagreeing cell contributes
// (+-1)^2, so this is sqrt(#differing cells) for binary grids.
inline double frobenius_error(const BurnGrid& a, const BurnGrid& b) {
  return std::sqrt(static_cast<double>(hamming_error(a, b)));
}

inline double mse(const BurnGrid& a, const BurnGrid& b) {
  return static_cast<double>(hamming_error(a, b)) / static_cast<double>(a.size());
}

inline double grid_norm(const BurnGrid& a, const BurnGrid& b, ScarNorm norm) {
  return norm == ScarNorm::Frobenius ? frobenius_error(a, b)
                                     : static_cast<double>(hamming_error(a, b));
}

// Weighted scar-evolution error: sum_t mu_t * ||S_t - P_t||.
inline double weighted_error(const ScarSeries& sim, const ScarSeries& obs,
                             std::span<const double> mu, ScarNorm norm = ScarNorm::Frobenius) {
  if (sim.size() != obs.size()) {
    throw std::invalid_argument("scar series differ in length");
  }
  if (mu.size() != sim.size()) {
    throw std::invalid_argument("weight vector length does not match series");
  }
  bool any_positive = false;
  for (double w : mu) {
    if (w < 0.0) {
      throw std::invalid_argument("weights must be non-negative");
    }
    any_positive |= w > 0.0;
  }
  if (!any_positive) {
    throw std::invalid_argument("at least one weight must be positive");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < sim.size(); ++t) {
    if (std::abs(sim.timestamps[t] - obs.timestamps[t]) > 1e-9) {
      throw std::invalid_argument("scar series timestamps are not aligned");
    }
    total += mu[t] * grid_norm(sim.grids[t], obs.grids[t], norm);
  }
  return total;
}

namespace metrics_detail {

struct WindowStats {
  double mean_a, mean_b, var_a, var_b, cov;
};

inline WindowStats window_stats(const BurnGrid& a, const BurnGrid& b, int r0, int c0, int h,
                                int w) {
  const double n = static_cast<double>(h) * w;
  double sa = 0.0, sb = 0.0;
  for (int r = r0; r < r0 + h; ++r) {
    for (int c = c0; c < c0 + w; ++c) {
      sa += a(r, c);
      sb += b(r, c);
    }
  }
  const double ma = sa / n, mb = sb / n;
  double va = 0.0, vb = 0.0, cov = 0.0;
  for (int r = r0; r < r0 + h; ++r) {
    for (int c = c0; c < c0 + w; ++c) {
      const double da = a(r, c) - ma, db = b(r, c) - mb;
      va += da * da;
      vb += db * db;
      cov += da * db;
    }
  }
  return {ma, mb, va / n, vb / n, cov / n};
}

inline double ssim_from_stats(const WindowStats& s) {
  // Standard stabilizers for dynamic range L = 1.
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;
  return ((2.0 * s.mean_a * s.mean_b + c1) * (2.0 * s.cov + c2)) /
         ((s.mean_a * s.mean_a + s.mean_b * s.mean_b + c1) * (s.var_a + s.var_b + c2));
}

}  // namespace metrics_detail

// Structural similarity with global (single-window) statistics; deterministic
// and parameter-free. Binary entries are treated as intensities in [0, 1].
inline double ssim(const BurnGrid& a, const BurnGrid& b) {
  metrics_detail::require_same_shape(a, b);
  return metrics_detail::ssim_from_stats(
      metrics_detail::window_stats(a, b, 0, 0, a.rows(), a.cols()));
}

// Sliding-window SSIM (stride 1, mean-pooled) for comparability with image
// libraries. Windows larger than the grid shrink to fit.
inline double ssim_windowed(const BurnGrid& a, const BurnGrid& b, int window = 8) {
  metrics_detail::require_same_shape(a, b);
  if (window < 1) {
    throw std::invalid_argument("window must be >= 1");
  }
  const int h = std::min(window, a.rows());
  const int w = std::min(window, a.cols());
  double total = 0.0;
  std::size_t count = 0;
  for (int r = 0; r + h <= a.rows(); ++r) {
    for (int c = 0; c + w <= a.cols(); ++c) {
      total += metrics_detail::ssim_from_stats(metrics_detail::window_stats(a, b, r, c, h, w));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace firecal
