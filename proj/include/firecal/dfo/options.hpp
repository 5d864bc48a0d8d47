#pragma once

// Shared option and result types for the derivative-free minimizers, plus the
// internal evaluation bookkeeping they all use: budget and wall-clock
// enforcement, incumbent tracking and the improvement trace.

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace firecal::dfo {

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;

  void validate(std::size_t n) const {
    if (lo.size() != n || hi.size() != n) {
      throw std::invalid_argument("bounds dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lo[i] <= hi[i])) {
        throw std::invalid_argument("bounds must satisfy lo <= hi");
      }
    }
  }

  bool contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lo[i] || x[i] > hi[i]) {
        return false;
      }
    }
    return true;
  }

  void clip(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i], lo[i], hi[i]);
    }
  }

  static Bounds uniform(std::size_t n, double lo, double hi) {
    return Bounds{std::vector<double>(n, lo), std::vector<double>(n, hi)};
  }
};

struct OptOptions {
  double xtol_abs = 1e-16;
  long long max_evals = 100000;
  double max_time = std::numeric_limits<double>::infinity();  // seconds
  std::optional<Bounds> bounds;
  // Quadratic trust region only: number of interpolation points, in
  // [n+2, (n+1)(n+2)/2]; 0 picks the default 2n+1.
  int m_points = 0;
  double initial_tr_radius = 0.5;
};

enum class Termination { XTol, MaxEvals, MaxTime };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::XTol: return "xtol";
    case Termination::MaxEvals: return "max_evals";
    case Termination::MaxTime: return "max_time";
  }
  return "unknown";
}

struct OptResult {
  std::vector<double> x_best;
  double f_best = std::numeric_limits<double>::infinity();
  long long neval = 0;
  double elapsed = 0.0;  // seconds
  Termination termination = Termination::XTol;
  // (neval, incumbent value) recorded at every strict improvement; the first
  // entry is always (1, f(x0)).
  std::vector<std::pair<long long, double>> trace;
};

namespace detail {

// Budget-aware evaluation wrapper. eval() must only be called when
// exhausted() is false; non-finite objective values are mapped to +infinity
// so they are never selected as incumbent.
template <typename F>
class Evaluator {
 public:
  Evaluator(F& f, const OptOptions& opts)
      : f_(f), opts_(opts), start_(std::chrono::steady_clock::now()) {
    if (opts.max_evals <= 0) {
      throw std::invalid_argument("evaluation budget is empty");
    }
  }

  bool exhausted() {
    if (neval_ >= opts_.max_evals) {
      why_ = Termination::MaxEvals;
      return true;
    }
    if (elapsed() > opts_.max_time) {
      why_ = Termination::MaxTime;
      return true;
    }
    return false;
  }

  double eval(const std::vector<double>& x) {
    double value = f_(std::span<const double>(x));
    ++neval_;
    if (std::isnan(value)) {
      value = std::numeric_limits<double>::infinity();
    }
    if (value < best_.f_best) {
      best_.f_best = value;
      best_.x_best = x;
      best_.trace.emplace_back(neval_, value);
    } else if (neval_ == 1) {
      best_.x_best = x;
      best_.f_best = value;
      best_.trace.emplace_back(neval_, value);
    }
    return value;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  long long neval() const { return neval_; }
  Termination budget_reason() const { return why_; }

  OptResult finish(Termination t) {
    best_.neval = neval_;
    best_.elapsed = elapsed();
    best_.termination = t;
    return std::move(best_);
  }

 private:
  F& f_;
  const OptOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  long long neval_ = 0;
  Termination why_ = Termination::MaxEvals;
  OptResult best_;
};

}  // namespace detail

}  // namespace firecal::dfo
