#pragma once

#include <array>
#include <functional>
#include <utility>

#include "gflux/boundary.hpp"
#include "gflux/field.hpp"
#include "gflux/grid.hpp"
#include "gflux/system.hpp"

namespace gflux {

// How source terms enter the global-flux scheme:
//   none              - homogeneous system,
//   swe_directional   - shallow-water bathymetry folded into the momentum
//                       point fluxes via directional single integrals
//                       (well-balanced path, production default),
//   generic_recursion - double-integral R field built by the 2D trapezoidal
//                       recursion from a pointwise source callback (kept for
//                       synthetic-source verification).
enum class SourceMode { none, swe_directional, generic_recursion };

// Pointwise source s(x, y, q); writes n_eq entries.
using SourceFn =
    std::function<void(double x, double y, std::span<const double> q,
                       std::span<double> s)>;

struct GfOptions {
  SourceMode source_mode = SourceMode::none;
  const Field* bathymetry = nullptr;  // cell-centered b incl. ghosts (SWE)
  double gravity = kDefaultGravity;   // used by the bathymetry paths
  SourceFn generic_source;            // used when source_mode == generic_recursion
  int threads = 1;
};

// Antiderivative fields of the point fluxes on the full one-ghost halo:
// F = int f dy, G = int g dx (trapezoidal sweeps from the low-index ghost
// layer, which holds the arbitrary start value 0), R = double integral of
// the source, and script = F + G - R.
struct GlobalFluxField {
  Field F, G, R, script;
};

// Everything the dissipation needs at one corner: the residual phi (mixed
// second difference of script split into its F/G/R parts), the mean state of
// the four adjacent cells, both flux Jacobians there, and the scaling
// alpha = 1/lambda_max (floored) with the length delta.
struct CornerResidual {
  int n = 0;
  std::array<double, kMaxComp> phi{}, phi_f{}, phi_g{}, phi_r{};
  std::array<double, kMaxComp> qbar{};
  std::array<double, kMaxComp * kMaxComp> jx{}, jy{};
  double alpha = 0.0;
  double delta = 0.0;
};

// Evaluates the point fluxes f, g (and the pointwise source when
// source_mode == generic_recursion) on the full halo; ghost states must be
// filled beforehand.  In swe_directional mode the directional source-flux
// integrals are folded into f[hu] and g[hv] and *s stays untouched.
// Returns the largest wave speed over the interior (the alpha-floor
// reference).  Throws SolverError with the cell index on inadmissible states.
double point_fluxes(const Grid& grid, const System& sys, const Field& q,
                    const GfOptions& opts, Field& f, Field& g, Field* s);

// Trapezoidal sweeps for F, G and (when s != nullptr) the 2D recursion for R.
GlobalFluxField build_global_fluxes(const Grid& grid, const Field& f,
                                    const Field& g, const Field* s);

// Boundary rule for the global-flux ghosts.  The sweeps above already extend
// the recursions through ghost cells (which realizes the periodic and
// dirichlet rules via the ghost point fluxes); transmissive sides replace the
// ghost script values with copies of the adjacent interior ones, which makes
// every boundary corner residual on such a side vanish identically.
void fill_gf_ghosts(const Grid& grid, GlobalFluxField& gf,
                    const BoundarySpec& bc);

// Full pipeline: ghost fill, point fluxes, sweeps, boundary rule.
GlobalFluxField compute_global_fluxes(const Grid& grid, const System& sys,
                                      Field& q, const BoundarySpec& bc,
                                      const GfOptions& opts = {});

// Corner residual at corner (ci, cj) assembled from 3x3 point-flux stencils:
// phi_f = (dy/2)(f_NE + f_SE - f_NW - f_SW), phi_g analogous, and
// phi_r = -(dx dy/4) * sum of the four source values (the source enters
// script with a minus sign).  qbar, Jacobians and alpha come from the state
// field.  incx/incy are the per-interface directional source-flux increments
// (swe_directional); pass nullptr otherwise.
CornerResidual corner_residual_compact(const Grid& grid, const System& sys,
                                       const Field& q, const Field& f,
                                       const Field& g, const Field* s,
                                       const Field* incx, const Field* incy,
                                       int ci, int cj, double alpha_floor);

// Same corner data, but phi taken from mixed second differences of the
// assembled script field (the production path; honors the boundary rule).
CornerResidual corner_residual_from_script(const Grid& grid, const System& sys,
                                           const Field& q,
                                           const GlobalFluxField& gf, int ci,
                                           int cj, double alpha_floor);

// SUPG corner dissipation (alpha*delta/4) (nx Jx/dx + ny Jy/dy) phi.
std::array<double, kMaxComp> supg_dissipation(const CornerResidual& cr,
                                              const CornerNormal& n,
                                              const Grid& grid);

// Oriented corner flux for the cell with orientation n at corner (ci, cj):
// mean of the four adjacent script values times nscalar, plus dissipation.
// The four oriented fluxes of a corner sum to zero exactly.
std::array<double, kMaxComp> corner_flux(const CornerResidual& cr,
                                         const GlobalFluxField& gf, int ci,
                                         int cj, const CornerNormal& n,
                                         const Grid& grid);

// Per-interface increments of the directional source-flux integrals:
// incx(i,j) = g*(h(i,j)+h(i-1,j))/2 * (b(i,j)-b(i-1,j)) and the y-analogue.
// Their cumulative sums from the low-index ghost layer are R^x, R^y.
std::pair<Field, Field> swe_directional_source_fluxes(const Grid& grid,
                                                      const Field& q,
                                                      const Field& b,
                                                      double gravity);

// Semi-discrete rate dq/dt from the recursive (production) assembly.
// Fills the ghosts of q.
void gf_rate(const Grid& grid, const System& sys, Field& q,
             const BoundarySpec& bc, const GfOptions& opts, Field& rate);

// Same rate from the compact 3x3 stencil forms (oracle; periodic interiors).
void gf_rate_compact(const Grid& grid, const System& sys, Field& q,
                     const BoundarySpec& bc, const GfOptions& opts,
                     Field& rate);

// Assembly entry points on raw point-flux fields (for kernel-level tests).
void gf_rate_from_pointfluxes(const Grid& grid, const System& sys,
                              const Field& q, const Field& f, const Field& g,
                              const Field* s, const BoundarySpec* bc,
                              Field& rate, int threads = 1);
void gf_rate_compact_from_pointfluxes(const Grid& grid, const System& sys,
                                      const Field& q, const Field& f,
                                      const Field& g, const Field* s,
                                      Field& rate, int threads = 1);

}  // namespace gflux
