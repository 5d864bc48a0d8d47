#pragma once

// Dense row-major raster grid. Row 0 is the northernmost row; row indices
// increase southward, column indices eastward.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace firecal {

template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) {
      throw std::invalid_argument("grid dimensions must be at least 1x1");
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int r, int c) const { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

  T& operator()(int r, int c) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const {
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

  T& at(int r, int c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(int r, int c) const {
    check(r, c);
    return (*this)(r, c);
  }

  std::vector<T>& cells() { return cells_; }
  const std::vector<T>& cells() const { return cells_; }

  bool operator==(const Grid&) const = default;

 private:
  void check(int r, int c) const {
    if (!in_bounds(r, c)) {
      throw std::out_of_range("grid index out of range");
    }
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

// Binary burn grid: 1 = burned (or burning) by the grid's timestamp.
using BurnGrid = Grid<std::uint8_t>;

// Integer fuel codes; 0 means non-fuel.
using FuelGrid = Grid<int>;

inline std::size_t count_burned(const BurnGrid& g) {
  std::size_t n = 0;
  for (auto v : g.cells()) {
    n += v != 0;
  }
  return n;
}

// An ordered sequence of cumulative burn grids with strictly increasing
// timestamps in minutes.
struct ScarSeries {
  std::vector<BurnGrid> grids;
  std::vector<double> timestamps;

  std::size_t size() const { return grids.size(); }
  bool empty() const { return grids.empty(); }

  void validate() const {
    if (grids.size() != timestamps.size()) {
      throw std::invalid_argument("scar series has mismatched grids and timestamps");
    }
    for (std::size_t i = 0; i < grids.size(); ++i) {
      if (grids[i].rows() != grids[0].rows() || grids[i].cols() != grids[0].cols()) {
        throw std::invalid_argument("scar series grids differ in dimensions");
      }
      if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
        throw std::invalid_argument("scar series timestamps must be strictly increasing");
      }
    }
  }

  bool operator==(const ScarSeries&) const = default;
};

}  // namespace firecal
