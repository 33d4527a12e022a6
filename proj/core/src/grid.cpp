#include "viscid/grid.hpp"

#include <cmath>
#include <string>

#include "viscid/errors.hpp"

namespace viscid {

Grid1D Grid1D::covering(double lo, double hi, std::size_t n_cells) {
  if (!(hi > lo) || n_cells == 0) throw ConfigError("grid: need hi > lo and n_cells > 0");
  Grid1D g{lo, (hi - lo) / static_cast<double>(n_cells), n_cells};
  g.validate();
  return g;
}

Grid1D Grid1D::with_max_spacing(double lo, double hi, double max_dx) {
  if (!(max_dx > 0.0)) throw ConfigError("grid: spacing must be positive");
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / max_dx - 1e-9));
  return covering(lo, hi, n);
}

void Grid1D::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min)) {
    throw ConfigError("grid: dx must be positive and finite");
  }
  if (n_cells < 4) {
    throw ConfigError("grid: need at least 4 cells, got " + std::to_string(n_cells));
  }
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> xs(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) xs[i] = center(i);
  return xs;
}

}  // namespace viscid
