#pragma once

#include <cstddef>
#include <vector>

namespace viscid {

/// Uniform cell-centred grid: x_i = x_min + (i + 1/2) dx, i = 0 .. n_cells-1.
struct Grid1D {
  double x_min = 0.0;
  double dx = 0.0;
  std::size_t n_cells = 0;

  /// Grid with n_cells cells exactly covering [lo, hi].
  [[nodiscard]] static Grid1D covering(double lo, double hi, std::size_t n_cells);
  /// Grid covering [lo, hi] with spacing at most max_dx.
  [[nodiscard]] static Grid1D with_max_spacing(double lo, double hi, double max_dx);

  /// Throws ConfigError unless dx > 0 and n_cells >= 4.
  void validate() const;

  [[nodiscard]] double center(std::size_t i) const noexcept {
    return x_min + (static_cast<double>(i) + 0.5) * dx;
  }
  [[nodiscard]] double x_max() const noexcept {
    return x_min + static_cast<double>(n_cells) * dx;
  }
  [[nodiscard]] std::vector<double> centers() const;
};

}  // namespace viscid
