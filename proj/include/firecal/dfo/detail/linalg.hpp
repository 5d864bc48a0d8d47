#pragma once

// Minimal dense linear algebra for the model-based optimizer: row-major
// square matrices with an LU factorization (partial pivoting) good enough
// for the small interpolation systems involved.

#include <cmath>
#include <cstddef>
#include <vector>

namespace firecal::dfo::detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

class LuFactor {
 public:
  explicit LuFactor(SquareMatrix a) : lu_(std::move(a)), piv_(lu_.size()) {
    const std::size_t n = lu_.size();
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        scale = std::max(scale, std::abs(lu_(r, c)));
      }
    }
    const double tiny = std::max(scale, 1.0) * 1e-13;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      for (std::size_t r = k + 1; r < n; ++r) {
        if (std::abs(lu_(r, k)) > std::abs(lu_(pivot, k))) {
          pivot = r;
        }
      }
      piv_[k] = pivot;
      if (pivot != k) {
        for (std::size_t c = 0; c < n; ++c) {
          std::swap(lu_(k, c), lu_(pivot, c));
        }
      }
      if (std::abs(lu_(k, k)) < tiny) {
        singular_ = true;
        return;
      }
      for (std::size_t r = k + 1; r < n; ++r) {
        lu_(r, k) /= lu_(k, k);
        const double m = lu_(r, k);
        for (std::size_t c = k + 1; c < n; ++c) {
          lu_(r, c) -= m * lu_(k, c);
        }
      }
    }
  }

  bool singular() const { return singular_; }

  std::vector<double> solve(std::vector<double> b) const {
    const std::size_t n = lu_.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(b[k], b[piv_[k]]);
      for (std::size_t r = k + 1; r < n; ++r) {
        b[r] -= lu_(r, k) * b[k];
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      for (std::size_t c = k + 1; c < n; ++c) {
        b[k] -= lu_(k, c) * b[c];
      }
      b[k] /= lu_(k, k);
    }
    return b;
  }

 private:
  SquareMatrix lu_;
  std::vector<std::size_t> piv_;
  bool singular_ = false;
};

}  // namespace firecal::dfo::detail
