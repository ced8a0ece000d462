#include "gflux/grid.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gflux {

CornerNormal corner_normal(int ell, int r) {
  assert(ell == 0 || ell == 1);
  assert(r == 0 || r == 1);
  CornerNormal n;
  n.nx = (ell == 0) ? -1 : 1;  // (-1)^(ell+1)
  n.ny = (r == 0) ? -1 : 1;    // (-1)^(r+1)
  n.nscalar = n.nx * n.ny;     // (-1)^(ell+r)
  return n;
}

Grid::Grid(int nx, int ny, std::array<double, 4> bounds, int ghost)
    : nx_(nx),
      ny_(ny),
      ghost_(ghost),
      x0_(bounds[0]),
      x1_(bounds[1]),
      y0_(bounds[2]),
      y1_(bounds[3]) {
  dx_ = (x1_ - x0_) / nx_;
  dy_ = (y1_ - y0_) / ny_;
  delta_ = std::sqrt(0.5 * (dx_ * dx_ + dy_ * dy_));
}

int Grid::cell_of_x(double x) const {
  int i = static_cast<int>(std::floor((x - x0_) / dx_));
  if (i < 0) i = 0;
  if (i >= nx_) i = nx_ - 1;
  return i;
}

int Grid::cell_of_y(double y) const {
  int j = static_cast<int>(std::floor((y - y0_) / dy_));
  if (j < 0) j = 0;
  if (j >= ny_) j = ny_ - 1;
  return j;
}

Grid build_grid(int nx, int ny, std::array<double, 4> bounds, int ghost) {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("build_grid: nx and ny must be >= 2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  if (ghost < 1)
    throw std::invalid_argument("build_grid: ghost width must be >= 1");
  if (!(bounds[1] > bounds[0]) || !(bounds[3] > bounds[2]))
    throw std::invalid_argument("build_grid: domain extents must be positive");
  return Grid(nx, ny, bounds, ghost);
}

}  // namespace gflux
