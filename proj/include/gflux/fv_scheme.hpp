#pragma once

#include <span>

#include "gflux/boundary.hpp"
#include "gflux/field.hpp"
#include "gflux/grid.hpp"
#include "gflux/system.hpp"

namespace gflux {

struct FvOptions {
  int order = 1;              // 1: piecewise constant, 2: limited linear
  double theta = 1.3;         // generalized-minmod parameter in [1, 2]
  const Field* bathymetry = nullptr;  // SWE cell-centered s = -g h grad(b)
  double gravity = kDefaultGravity;
  int threads = 1;
};

// min of the three if all positive, max if all negative, else zero.
double minmod3(double a, double b, double c);

// Generalized-minmod slope per component:
// minmod(theta (q0-qm)/dx, (qp-qm)/(2dx), theta (qp-q0)/dx).
void limited_slope(std::span<const double> qm, std::span<const double> q0,
                   std::span<const double> qp, double dx, double theta,
                   std::span<double> slope);

// Rusanov (local Lax-Friedrichs) interface flux; the interface speed is the
// max of the two one-sided max_wave_speed values.
void rusanov_flux(const System& sys, std::span<const double> ql,
                  std::span<const double> qr, Axis dir, std::span<double> out);

// Semi-discrete rate of the dimension-by-dimension FV scheme.  order 2 needs
// a ghost width of 2; at non-periodic sides the ghost-cell slopes are zeroed
// (first order at boundaries).  Fills the ghosts of q.
void fv_rate(const Grid& grid, const System& sys, Field& q,
             const BoundarySpec& bc, const FvOptions& opts, Field& rate);

}  // namespace gflux
