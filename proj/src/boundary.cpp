#include "gflux/boundary.hpp"

#include <algorithm>

#include "gflux/errors.hpp"

namespace gflux {

void BoundarySpec::validate() const {
  if ((west.kind == BcKind::periodic) != (east.kind == BcKind::periodic))
    throw ConfigError("boundary: periodic west/east must be paired");
  if ((south.kind == BcKind::periodic) != (north.kind == BcKind::periodic))
    throw ConfigError("boundary: periodic south/north must be paired");
  auto need_state = [](const BoundarySide& s, const char* name) {
    if (s.kind == BcKind::dirichlet && !s.state)
      throw ConfigError(std::string("boundary: dirichlet side '") + name +
                        "' has no state function");
  };
  need_state(west, "west");
  need_state(east, "east");
  need_state(south, "south");
  need_state(north, "north");
}

int BoundarySpec::dirichlet_sides() const {
  int n = 0;
  for (const BoundarySide* s : {&west, &east, &south, &north})
    if (s->kind == BcKind::dirichlet) ++n;
  return n;
}

BoundarySpec periodic_bc() { return BoundarySpec{}; }

BoundarySpec transmissive_bc() {
  BoundarySpec bc;
  bc.west.kind = bc.east.kind = bc.south.kind = bc.north.kind =
      BcKind::transmissive;
  return bc;
}

BoundarySpec dirichlet_bc(StateFn state) {
  BoundarySpec bc;
  for (BoundarySide* s : {&bc.west, &bc.east, &bc.south, &bc.north}) {
    s->kind = BcKind::dirichlet;
    s->state = state;
  }
  return bc;
}

namespace {

void fill_cell(const Grid& grid, Field& q, const BoundarySide& side,
               int i, int j, int isrc, int jsrc) {
  const int nc = q.ncomp();
  switch (side.kind) {
    case BcKind::periodic:
    case BcKind::transmissive:
      for (int c = 0; c < nc; ++c) q(i, j, c) = q(isrc, jsrc, c);
      break;
    case BcKind::dirichlet:
      side.state(grid.xc(i), grid.yc(j), q.cell(i, j));
      break;
  }
}

}  // namespace

void fill_state_ghosts(const Grid& grid, Field& q, const BoundarySpec& bc) {
  bc.validate();
  const int g = q.ghost();
  const int nx = grid.nx(), ny = grid.ny();

  // Pass 1: west/east columns for interior rows.
  for (int j = 0; j < ny; ++j) {
    for (int l = 1; l <= g; ++l) {
      int iw = -l;
      int iw_src = (bc.west.kind == BcKind::periodic) ? grid.wrap_i(iw)
                   : (bc.west.kind == BcKind::transmissive) ? 0 : 0;
      fill_cell(grid, q, bc.west, iw, j, iw_src, j);

      int ie = nx - 1 + l;
      int ie_src = (bc.east.kind == BcKind::periodic) ? grid.wrap_i(ie)
                   : (bc.east.kind == BcKind::transmissive) ? nx - 1 : 0;
      fill_cell(grid, q, bc.east, ie, j, ie_src, j);
    }
  }

  // Pass 2: south/north rows across the full halo width, so diagonal ghost
  // corners compose the two side rules (periodic corners wrap diagonally).
  for (int i = -g; i < nx + g; ++i) {
    for (int l = 1; l <= g; ++l) {
      int js = -l;
      int js_src = (bc.south.kind == BcKind::periodic) ? grid.wrap_j(js)
                   : (bc.south.kind == BcKind::transmissive) ? 0 : 0;
      fill_cell(grid, q, bc.south, i, js, i, js_src);

      int jn = ny - 1 + l;
      int jn_src = (bc.north.kind == BcKind::periodic) ? grid.wrap_j(jn)
                   : (bc.north.kind == BcKind::transmissive) ? ny - 1 : 0;
      fill_cell(grid, q, bc.north, i, jn, i, jn_src);
    }
  }
}

}  // namespace gflux
