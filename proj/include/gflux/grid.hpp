#pragma once

#include <array>

namespace gflux {

// Outward corner normal of a cell at one of its four corners, identified by
// the offsets (ell, r) of the cell within the corner's 2x2 cell block:
// ell = r = 0 means the cell is the lower-left neighbour of the corner.
// Components are +-1; nscalar = nx*ny = (-1)^(ell+r) is the sign with which
// the scalar corner flux enters that cell's update.
struct CornerNormal {
  int nx = 0;
  int ny = 0;
  int nscalar = 0;
};

// n = ((-1)^(ell+1), (-1)^(r+1)); the four normals of a corner sum to zero.
CornerNormal corner_normal(int ell, int r);

// Uniform Cartesian grid on [x0,x1] x [y0,y1] with nx*ny cells and a ghost
// halo of fixed width.  Cell (i,j), 0-based, has center
// (x0 + (i+1/2)dx, y0 + (j+1/2)dy); corner (ci,cj), ci in [0,nx], lies at
// (x0 + ci*dx, y0 + cj*dy) and its four adjacent cells are
// (ci-1+ell, cj-1+r) for ell,r in {0,1}.
class Grid {
 public:
  Grid() = default;
  Grid(int nx, int ny, std::array<double, 4> bounds, int ghost);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  // SUPG reference length sqrt((dx^2+dy^2)/2).
  double delta() const { return delta_; }

  double xc(int i) const { return x0_ + (i + 0.5) * dx_; }
  double yc(int j) const { return y0_ + (j + 0.5) * dy_; }
  double corner_x(int ci) const { return x0_ + ci * dx_; }
  double corner_y(int cj) const { return y0_ + cj * dy_; }

  // Cell containing an interior point (bijective with xc/yc on centers).
  int cell_of_x(double x) const;
  int cell_of_y(double y) const;

  // Periodic wrap of a cell index into [0, n).
  int wrap_i(int i) const { return mod(i, nx_); }
  int wrap_j(int j) const { return mod(j, ny_); }

 private:
  static int mod(int a, int n) {
    int m = a % n;
    return m < 0 ? m + n : m;
  }

  int nx_ = 0, ny_ = 0, ghost_ = 1;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
  double dx_ = 0, dy_ = 0, delta_ = 0;
};

// Validates and constructs a grid: nx, ny >= 2, ghost >= 1, positive extents.
// bounds = {x0, x1, y0, y1}.  Throws std::invalid_argument on bad input.
Grid build_grid(int nx, int ny, std::array<double, 4> bounds, int ghost = 1);

}  // namespace gflux
