#pragma once

#include <functional>
#include <span>

#include "gflux/field.hpp"
#include "gflux/grid.hpp"

namespace gflux {

enum class BcKind { periodic, dirichlet, transmissive };

// Prescribed conservative state as a function of position (Dirichlet sides).
using StateFn = std::function<void(double x, double y, std::span<double> q)>;

struct BoundarySide {
  BcKind kind = BcKind::periodic;
  StateFn state;  // required for dirichlet
};

// Per-side boundary specification.  Periodic sides must be paired
// (west with east, south with north); validate() enforces this and that
// dirichlet sides carry a state function.
struct BoundarySpec {
  BoundarySide west, east, south, north;

  void validate() const;
  // Number of dirichlet sides (more than two is legal but, for equilibrium
  // preservation, worth a warning; the caller decides what to do with it).
  int dirichlet_sides() const;
  bool periodic_x() const { return west.kind == BcKind::periodic; }
  bool periodic_y() const { return south.kind == BcKind::periodic; }
};

BoundarySpec periodic_bc();
BoundarySpec transmissive_bc();
BoundarySpec dirichlet_bc(StateFn state);  // same prescribed state on all sides

// Fills all ghost layers of a cell-centered state field:
//   periodic     - wraps interior values (diagonal ghost corners wrap too),
//   dirichlet    - evaluates the prescribed state at ghost cell centers,
//   transmissive - copies the nearest interior cell (zero-order).
void fill_state_ghosts(const Grid& grid, Field& q, const BoundarySpec& bc);

}  // namespace gflux
