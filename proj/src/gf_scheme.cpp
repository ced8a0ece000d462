#include "gflux/gf_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gflux/errors.hpp"
#include "gflux/parallel.hpp"

namespace gflux {
namespace {

std::string cell_tag(int i, int j) {
  return "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Plain point fluxes f, g on the one-ghost halo.  Returns the maximum wave
// speed over interior cells (reference speed for the alpha floor).
double eval_plain_fluxes(const Grid& grid, const System& sys, const Field& q,
                         Field& f, Field& g) {
  const int nx = grid.nx(), ny = grid.ny();
  double ref = 0.0;
  for (int j = -1; j <= ny; ++j) {
    for (int i = -1; i <= nx; ++i) {
      try {
        sys.flux(q.cell(i, j), Axis::x, f.cell(i, j));
        sys.flux(q.cell(i, j), Axis::y, g.cell(i, j));
        if (i >= 0 && i < nx && j >= 0 && j < ny)
          ref = std::max(ref, sys.max_wave_speed(q.cell(i, j)));
      } catch (const std::domain_error& e) {
        throw SolverError(std::string(e.what()) + " at " + cell_tag(i, j));
      }
    }
  }
  return ref;
}

void eval_generic_source(const Grid& grid, const System& sys, const Field& q,
                         const GfOptions& opts, Field& s) {
  const int nx = grid.nx(), ny = grid.ny();
  const int n = sys.n_eq();
  if (opts.generic_source) {
    for (int j = -1; j <= ny; ++j)
      for (int i = -1; i <= nx; ++i)
        opts.generic_source(grid.xc(i), grid.yc(j), q.cell(i, j), s.cell(i, j));
    return;
  }
  // Default generic source: shallow-water bathymetry, s = (0, -g h b_x, -g h b_y)
  // with centered slopes of the cell-sampled bathymetry.
  if (sys.id() != SystemId::shallow_water || opts.bathymetry == nullptr)
    throw ConfigError(
        "gf: generic_recursion source mode needs a source callback or "
        "shallow-water bathymetry");
  const Field& b = *opts.bathymetry;
  for (int j = -1; j <= ny; ++j) {
    for (int i = -1; i <= nx; ++i) {
      for (int c = 0; c < n; ++c) s(i, j, c) = 0.0;
      // One-sided differences on the outermost halo ring, centered inside.
      double bxm = (i - 1 >= -1) ? b(i - 1, j, 0) : b(i, j, 0);
      double bxp = (i + 1 <= nx) ? b(i + 1, j, 0) : b(i, j, 0);
      double dx = ((i + 1 <= nx ? 1 : 0) + (i - 1 >= -1 ? 1 : 0)) * grid.dx();
      double bym = (j - 1 >= -1) ? b(i, j - 1, 0) : b(i, j, 0);
      double byp = (j + 1 <= ny) ? b(i, j + 1, 0) : b(i, j, 0);
      double dy = ((j + 1 <= ny ? 1 : 0) + (j - 1 >= -1 ? 1 : 0)) * grid.dy();
      double h = q(i, j, 0);
      if (dx > 0) s(i, j, 1) = -opts.gravity * h * (bxp - bxm) / dx;
      if (dy > 0) s(i, j, 2) = -opts.gravity * h * (byp - bym) / dy;
    }
  }
}

// Shared geometric pieces of a corner residual: mean state, Jacobians, alpha.
void corner_core(const Grid& grid, const System& sys, const Field& q, int ci,
                 int cj, double alpha_floor, CornerResidual& cr) {
  const int n = sys.n_eq();
  cr.n = n;
  cr.delta = grid.delta();
  for (int c = 0; c < n; ++c)
    cr.qbar[c] = 0.25 * (q(ci - 1, cj - 1, c) + q(ci, cj - 1, c) +
                         q(ci - 1, cj, c) + q(ci, cj, c));
  std::span<const double> qb(cr.qbar.data(), static_cast<std::size_t>(n));
  try {
    sys.jacobian(qb, Axis::x, std::span<double>(cr.jx.data(), cr.jx.size()));
    sys.jacobian(qb, Axis::y, std::span<double>(cr.jy.data(), cr.jy.size()));
    double lam = sys.max_wave_speed(qb);
    if (!std::isfinite(lam))
      throw std::domain_error("non-finite wave speed");
    cr.alpha = 1.0 / std::max(lam, alpha_floor);
  } catch (const std::domain_error& e) {
    throw SolverError(std::string(e.what()) + " at corner (" +
                      std::to_string(ci) + "," + std::to_string(cj) + ")");
  }
}

struct CornerScratch {
  // Per-corner mean script value and the two halves of the dissipation:
  // X = (alpha*delta/(4 dx)) Jx phi, Y = (alpha*delta/(4 dy)) Jy phi, so the
  // oriented corner flux is Fbar*nscalar + (-1)^(ell+1) X + (-1)^(r+1) Y.
  Field fbar, x, y;
};

void corner_pass_from_script(const Grid& grid, const System& sys,
                             const Field& q, const GlobalFluxField& gf,
                             double alpha_floor, int threads,
                             CornerScratch& cs) {
  const int nx = grid.nx(), ny = grid.ny();
  const int n = sys.n_eq();
  parallel_for(ny + 1, threads, [&](int cj) {
    CornerResidual cr;
    double tx[kMaxComp], ty[kMaxComp];
    for (int ci = 0; ci <= nx; ++ci) {
      corner_core(grid, sys, q, ci, cj, alpha_floor, cr);
      for (int c = 0; c < n; ++c) {
        cr.phi[c] = gf.script(ci, cj, c) - gf.script(ci - 1, cj, c) -
                    gf.script(ci, cj - 1, c) + gf.script(ci - 1, cj - 1, c);
        cs.fbar(ci, cj, c) =
            0.25 * (gf.script(ci - 1, cj - 1, c) + gf.script(ci, cj - 1, c) +
                    gf.script(ci - 1, cj, c) + gf.script(ci, cj, c));
      }
      std::span<const double> phi(cr.phi.data(), static_cast<std::size_t>(n));
      matvec(n, std::span<const double>(cr.jx.data(), cr.jx.size()), phi,
             std::span<double>(tx, static_cast<std::size_t>(n)));
      matvec(n, std::span<const double>(cr.jy.data(), cr.jy.size()), phi,
             std::span<double>(ty, static_cast<std::size_t>(n)));
      double ad4 = 0.25 * cr.alpha * cr.delta;
      for (int c = 0; c < n; ++c) {
        cs.x(ci, cj, c) = ad4 * tx[c] / grid.dx();
        cs.y(ci, cj, c) = ad4 * ty[c] / grid.dy();
      }
    }
  });
}

// Gather the four oriented corner fluxes of each cell; rate = -sum/(dx dy).
void gather_cells(const Grid& grid, int n, const CornerScratch& cs,
                  const Field* fbar, int threads, Field& rate) {
  const int nx = grid.nx(), ny = grid.ny();
  const double inv = 1.0 / (grid.dx() * grid.dy());
  parallel_for(ny, threads, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      for (int c = 0; c < n; ++c) {
        // Corners: NE=(i+1,j+1) or.(0,0), NW=(i,j+1) or.(1,0),
        //          SE=(i+1,j) or.(0,1),  SW=(i,j) or.(1,1).
        double sum = -cs.x(i + 1, j + 1, c) - cs.y(i + 1, j + 1, c) +
                     cs.x(i, j + 1, c) - cs.y(i, j + 1, c) -
                     cs.x(i + 1, j, c) + cs.y(i + 1, j, c) +
                     cs.x(i, j, c) + cs.y(i, j, c);
        if (fbar)
          sum += (*fbar)(i + 1, j + 1, c) - (*fbar)(i, j + 1, c) -
                 (*fbar)(i + 1, j, c) + (*fbar)(i, j, c);
        rate(i, j, c) = -sum * inv;
      }
    }
  });
}

}  // namespace

double point_fluxes(const Grid& grid, const System& sys, const Field& q,
                    const GfOptions& opts, Field& f, Field& g, Field* s) {
  double ref = eval_plain_fluxes(grid, sys, q, f, g);
  switch (opts.source_mode) {
    case SourceMode::none:
      break;
    case SourceMode::swe_directional: {
      if (sys.id() != SystemId::shallow_water || opts.bathymetry == nullptr)
        throw ConfigError(
            "gf: swe_directional source mode requires the shallow-water "
            "system and a bathymetry field");
      auto [incx, incy] =
          swe_directional_source_fluxes(grid, q, *opts.bathymetry, opts.gravity);
      const int nx = grid.nx(), ny = grid.ny();
      // Fold R^x into f[hu] and R^y into g[hv]; the low-index ghost layer
      // keeps the plain flux (cumulative integral starts at zero there).
      for (int j = -1; j <= ny; ++j) {
        double rx = 0.0;
        for (int i = 0; i <= nx; ++i) {
          rx += incx(i, j, 0);
          f(i, j, 1) += rx;
        }
      }
      for (int i = -1; i <= nx; ++i) {
        double ry = 0.0;
        for (int j = 0; j <= ny; ++j) {
          ry += incy(i, j, 0);
          g(i, j, 2) += ry;
        }
      }
      break;
    }
    case SourceMode::generic_recursion:
      if (s == nullptr)
        throw ConfigError("gf: generic_recursion mode needs a source field");
      eval_generic_source(grid, sys, q, opts, *s);
      break;
  }
  return ref;
}

GlobalFluxField build_global_fluxes(const Grid& grid, const Field& f,
                                    const Field& g, const Field* s) {
  const int nx = grid.nx(), ny = grid.ny();
  const int n = f.ncomp();
  GlobalFluxField gf{Field(nx, ny, 1, n), Field(nx, ny, 1, n),
                     Field(nx, ny, 1, n), Field(nx, ny, 1, n)};
  const double hdy = 0.5 * grid.dy(), hdx = 0.5 * grid.dx();

  for (int i = -1; i <= nx; ++i)
    for (int c = 0; c < n; ++c) gf.F(i, -1, c) = 0.0;
  for (int j = 0; j <= ny; ++j)
    for (int i = -1; i <= nx; ++i)
      for (int c = 0; c < n; ++c)
        gf.F(i, j, c) = gf.F(i, j - 1, c) + hdy * (f(i, j - 1, c) + f(i, j, c));

  for (int j = -1; j <= ny; ++j) {
    for (int c = 0; c < n; ++c) gf.G(-1, j, c) = 0.0;
    for (int i = 0; i <= nx; ++i)
      for (int c = 0; c < n; ++c)
        gf.G(i, j, c) = gf.G(i - 1, j, c) + hdx * (g(i - 1, j, c) + g(i, j, c));
  }

  if (s != nullptr) {
    const double q4 = 0.25 * grid.dx() * grid.dy();
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        for (int c = 0; c < n; ++c)
          gf.R(i, j, c) = gf.R(i - 1, j, c) + gf.R(i, j - 1, c) -
                          gf.R(i - 1, j - 1, c) +
                          q4 * ((*s)(i - 1, j - 1, c) + (*s)(i - 1, j, c) +
                                (*s)(i, j - 1, c) + (*s)(i, j, c));
  }

  for (int j = -1; j <= ny; ++j)
    for (int i = -1; i <= nx; ++i)
      for (int c = 0; c < n; ++c)
        gf.script(i, j, c) = gf.F(i, j, c) + gf.G(i, j, c) - gf.R(i, j, c);
  return gf;
}

void fill_gf_ghosts(const Grid& grid, GlobalFluxField& gf,
                    const BoundarySpec& bc) {
  const int nx = grid.nx(), ny = grid.ny();
  auto copy_col = [&](int dst, int src) {
    for (Field* fld : {&gf.F, &gf.G, &gf.R, &gf.script})
      for (int j = -1; j <= ny; ++j)
        for (int c = 0; c < fld->ncomp(); ++c)
          (*fld)(dst, j, c) = (*fld)(src, j, c);
  };
  auto copy_row = [&](int dst, int src) {
    for (Field* fld : {&gf.F, &gf.G, &gf.R, &gf.script})
      for (int i = -1; i <= nx; ++i)
        for (int c = 0; c < fld->ncomp(); ++c)
          (*fld)(i, dst, c) = (*fld)(i, src, c);
  };
  // Sides first in a fixed order; rows run over the full halo afterwards so
  // doubly-transmissive ghost corners copy the interior corner value.
  if (bc.west.kind == BcKind::transmissive) copy_col(-1, 0);
  if (bc.east.kind == BcKind::transmissive) copy_col(nx, nx - 1);
  if (bc.south.kind == BcKind::transmissive) copy_row(-1, 0);
  if (bc.north.kind == BcKind::transmissive) copy_row(ny, ny - 1);
}

GlobalFluxField compute_global_fluxes(const Grid& grid, const System& sys,
                                      Field& q, const BoundarySpec& bc,
                                      const GfOptions& opts) {
  fill_state_ghosts(grid, q, bc);
  const int n = sys.n_eq();
  Field f(grid.nx(), grid.ny(), 1, n), g(grid.nx(), grid.ny(), 1, n);
  Field s;
  Field* sp = nullptr;
  if (opts.source_mode == SourceMode::generic_recursion) {
    s = Field(grid.nx(), grid.ny(), 1, n);
    sp = &s;
  }
  point_fluxes(grid, sys, q, opts, f, g, sp);
  GlobalFluxField gf = build_global_fluxes(grid, f, g, sp);
  fill_gf_ghosts(grid, gf, bc);
  return gf;
}

CornerResidual corner_residual_compact(const Grid& grid, const System& sys,
                                       const Field& q, const Field& f,
                                       const Field& g, const Field* s,
                                       const Field* incx, const Field* incy,
                                       int ci, int cj, double alpha_floor) {
  CornerResidual cr;
  corner_core(grid, sys, q, ci, cj, alpha_floor, cr);
  const int n = cr.n;
  const double hdy = 0.5 * grid.dy(), hdx = 0.5 * grid.dx();
  for (int c = 0; c < n; ++c) {
    cr.phi_f[c] = hdy * (f(ci, cj, c) + f(ci, cj - 1, c) - f(ci - 1, cj, c) -
                         f(ci - 1, cj - 1, c));
    cr.phi_g[c] = hdx * (g(ci, cj, c) + g(ci - 1, cj, c) - g(ci, cj - 1, c) -
                         g(ci - 1, cj - 1, c));
    cr.phi_r[c] = 0.0;
  }
  if (s != nullptr) {
    // Source part of the mixed difference of script = F + G - R.
    const double q4 = 0.25 * grid.dx() * grid.dy();
    for (int c = 0; c < n; ++c)
      cr.phi_r[c] = -q4 * ((*s)(ci - 1, cj - 1, c) + (*s)(ci - 1, cj, c) +
                           (*s)(ci, cj - 1, c) + (*s)(ci, cj, c));
  }
  if (incx != nullptr)
    cr.phi_f[1] += hdy * ((*incx)(ci, cj, 0) + (*incx)(ci, cj - 1, 0));
  if (incy != nullptr)
    cr.phi_g[2] += hdx * ((*incy)(ci, cj, 0) + (*incy)(ci - 1, cj, 0));
  for (int c = 0; c < n; ++c)
    cr.phi[c] = cr.phi_f[c] + cr.phi_g[c] + cr.phi_r[c];
  return cr;
}

CornerResidual corner_residual_from_script(const Grid& grid, const System& sys,
                                           const Field& q,
                                           const GlobalFluxField& gf, int ci,
                                           int cj, double alpha_floor) {
  CornerResidual cr;
  corner_core(grid, sys, q, ci, cj, alpha_floor, cr);
  auto mixed = [&](const Field& a, int c) {
    return a(ci, cj, c) - a(ci - 1, cj, c) - a(ci, cj - 1, c) +
           a(ci - 1, cj - 1, c);
  };
  for (int c = 0; c < cr.n; ++c) {
    cr.phi_f[c] = mixed(gf.F, c);
    cr.phi_g[c] = mixed(gf.G, c);
    cr.phi_r[c] = -mixed(gf.R, c);
    cr.phi[c] = mixed(gf.script, c);
  }
  return cr;
}

std::array<double, kMaxComp> supg_dissipation(const CornerResidual& cr,
                                              const CornerNormal& n,
                                              const Grid& grid) {
  const int ne = cr.n;
  double tx[kMaxComp], ty[kMaxComp];
  std::span<const double> phi(cr.phi.data(), static_cast<std::size_t>(ne));
  matvec(ne, std::span<const double>(cr.jx.data(), cr.jx.size()), phi,
         std::span<double>(tx, static_cast<std::size_t>(ne)));
  matvec(ne, std::span<const double>(cr.jy.data(), cr.jy.size()), phi,
         std::span<double>(ty, static_cast<std::size_t>(ne)));
  std::array<double, kMaxComp> d{};
  const double ad4 = 0.25 * cr.alpha * cr.delta;
  for (int c = 0; c < ne; ++c)
    d[c] = ad4 * (n.nx * tx[c] / grid.dx() + n.ny * ty[c] / grid.dy());
  return d;
}

std::array<double, kMaxComp> corner_flux(const CornerResidual& cr,
                                         const GlobalFluxField& gf, int ci,
                                         int cj, const CornerNormal& n,
                                         const Grid& grid) {
  std::array<double, kMaxComp> out = supg_dissipation(cr, n, grid);
  for (int c = 0; c < cr.n; ++c) {
    double fbar =
        0.25 * (gf.script(ci - 1, cj - 1, c) + gf.script(ci, cj - 1, c) +
                gf.script(ci - 1, cj, c) + gf.script(ci, cj, c));
    out[c] += n.nscalar * fbar;
  }
  return out;
}

std::pair<Field, Field> swe_directional_source_fluxes(const Grid& grid,
                                                      const Field& q,
                                                      const Field& b,
                                                      double gravity) {
  const int nx = grid.nx(), ny = grid.ny();
  Field incx(nx, ny, 1, 1), incy(nx, ny, 1, 1);
  for (int j = -1; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      incx(i, j, 0) = gravity * 0.5 * (q(i, j, 0) + q(i - 1, j, 0)) *
                      (b(i, j, 0) - b(i - 1, j, 0));
  for (int j = 0; j <= ny; ++j)
    for (int i = -1; i <= nx; ++i)
      incy(i, j, 0) = gravity * 0.5 * (q(i, j, 0) + q(i, j - 1, 0)) *
                      (b(i, j, 0) - b(i, j - 1, 0));
  return {std::move(incx), std::move(incy)};
}

void gf_rate_from_pointfluxes(const Grid& grid, const System& sys,
                              const Field& q, const Field& f, const Field& g,
                              const Field* s, const BoundarySpec* bc,
                              Field& rate, int threads) {
  GlobalFluxField gf = build_global_fluxes(grid, f, g, s);
  if (bc != nullptr) fill_gf_ghosts(grid, gf, *bc);

  double ref = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      ref = std::max(ref, sys.max_wave_speed(q.cell(i, j)));
  const double alpha_floor = 1e-12 * ref;

  const int n = sys.n_eq();
  CornerScratch cs{Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                   Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                   Field(grid.nx() + 1, grid.ny() + 1, 0, n)};
  corner_pass_from_script(grid, sys, q, gf, alpha_floor, threads, cs);
  gather_cells(grid, n, cs, &cs.fbar, threads, rate);
}

void gf_rate(const Grid& grid, const System& sys, Field& q,
             const BoundarySpec& bc, const GfOptions& opts, Field& rate) {
  fill_state_ghosts(grid, q, bc);
  const int n = sys.n_eq();
  Field f(grid.nx(), grid.ny(), 1, n), g(grid.nx(), grid.ny(), 1, n);
  Field s;
  Field* sp = nullptr;
  if (opts.source_mode == SourceMode::generic_recursion) {
    s = Field(grid.nx(), grid.ny(), 1, n);
    sp = &s;
  }
  double ref = point_fluxes(grid, sys, q, opts, f, g, sp);
  GlobalFluxField gf = build_global_fluxes(grid, f, g, sp);
  fill_gf_ghosts(grid, gf, bc);

  const double alpha_floor = 1e-12 * ref;
  CornerScratch cs{Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                   Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                   Field(grid.nx() + 1, grid.ny() + 1, 0, n)};
  corner_pass_from_script(grid, sys, q, gf, alpha_floor, opts.threads, cs);
  gather_cells(grid, n, cs, &cs.fbar, opts.threads, rate);
}

namespace {

// Compact dissipation pass: per-corner X, Y from corner_residual_compact.
void corner_pass_compact(const Grid& grid, const System& sys, const Field& q,
                         const Field& f, const Field& g, const Field* s,
                         const Field* incx, const Field* incy,
                         double alpha_floor, int threads, CornerScratch& cs) {
  const int nx = grid.nx(), ny = grid.ny();
  const int n = sys.n_eq();
  parallel_for(ny + 1, threads, [&](int cj) {
    double tx[kMaxComp], ty[kMaxComp];
    for (int ci = 0; ci <= nx; ++ci) {
      CornerResidual cr = corner_residual_compact(grid, sys, q, f, g, s, incx,
                                                  incy, ci, cj, alpha_floor);
      std::span<const double> phi(cr.phi.data(), static_cast<std::size_t>(n));
      matvec(n, std::span<const double>(cr.jx.data(), cr.jx.size()), phi,
             std::span<double>(tx, static_cast<std::size_t>(n)));
      matvec(n, std::span<const double>(cr.jy.data(), cr.jy.size()), phi,
             std::span<double>(ty, static_cast<std::size_t>(n)));
      double ad4 = 0.25 * cr.alpha * cr.delta;
      for (int c = 0; c < n; ++c) {
        cs.x(ci, cj, c) = ad4 * tx[c] / grid.dx();
        cs.y(ci, cj, c) = ad4 * ty[c] / grid.dy();
      }
    }
  });
}

}  // namespace

void gf_rate_compact_from_pointfluxes(const Grid& grid, const System& sys,
                                      const Field& q, const Field& f,
                                      const Field& g, const Field* s,
                                      Field& rate, int threads) {
  double ref = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      ref = std::max(ref, sys.max_wave_speed(q.cell(i, j)));
  const double alpha_floor = 1e-12 * ref;
  const int n = sys.n_eq();

  CornerScratch cs{Field(1, 1, 0, 1), Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                   Field(grid.nx() + 1, grid.ny() + 1, 0, n)};
  corner_pass_compact(grid, sys, q, f, g, s, nullptr, nullptr, alpha_floor,
                      threads, cs);
  gather_cells(grid, n, cs, nullptr, threads, rate);

  // Central part: 9-point averaged differences plus the weighted source.
  const double idx = 1.0 / grid.dx(), idy = 1.0 / grid.dy();
  parallel_for(grid.ny(), threads, [&](int j) {
    for (int i = 0; i < grid.nx(); ++i) {
      for (int c = 0; c < n; ++c) {
        double dfx = 0.125 * ((f(i + 1, j + 1, c) - f(i - 1, j + 1, c)) +
                              2.0 * (f(i + 1, j, c) - f(i - 1, j, c)) +
                              (f(i + 1, j - 1, c) - f(i - 1, j - 1, c)));
        double dgy = 0.125 * ((g(i + 1, j + 1, c) - g(i + 1, j - 1, c)) +
                              2.0 * (g(i, j + 1, c) - g(i, j - 1, c)) +
                              (g(i - 1, j + 1, c) - g(i - 1, j - 1, c)));
        double src = 0.0;
        if (s != nullptr)
          src = ((*s)(i - 1, j - 1, c) + 2.0 * (*s)(i, j - 1, c) +
                 (*s)(i + 1, j - 1, c) + 2.0 * (*s)(i - 1, j, c) +
                 4.0 * (*s)(i, j, c) + 2.0 * (*s)(i + 1, j, c) +
                 (*s)(i - 1, j + 1, c) + 2.0 * (*s)(i, j + 1, c) +
                 (*s)(i + 1, j + 1, c)) /
                16.0;
        rate(i, j, c) += -idx * dfx - idy * dgy + src;
      }
    }
  });
}

void gf_rate_compact(const Grid& grid, const System& sys, Field& q,
                     const BoundarySpec& bc, const GfOptions& opts,
                     Field& rate) {
  fill_state_ghosts(grid, q, bc);
  const int n = sys.n_eq();
  Field f(grid.nx(), grid.ny(), 1, n), g(grid.nx(), grid.ny(), 1, n);
  double ref = eval_plain_fluxes(grid, sys, q, f, g);
  const double alpha_floor = 1e-12 * ref;

  if (opts.source_mode == SourceMode::swe_directional) {
    if (sys.id() != SystemId::shallow_water || opts.bathymetry == nullptr)
      throw ConfigError(
          "gf: swe_directional source mode requires the shallow-water system "
          "and a bathymetry field");
    auto [incx, incy] =
        swe_directional_source_fluxes(grid, q, *opts.bathymetry, opts.gravity);

    CornerScratch cs{Field(1, 1, 0, 1),
                     Field(grid.nx() + 1, grid.ny() + 1, 0, n),
                     Field(grid.nx() + 1, grid.ny() + 1, 0, n)};
    corner_pass_compact(grid, sys, q, f, g, nullptr, &incx, &incy, alpha_floor,
                        opts.threads, cs);
    gather_cells(grid, n, cs, nullptr, opts.threads, rate);

    const double idx = 1.0 / grid.dx(), idy = 1.0 / grid.dy();
    parallel_for(grid.ny(), opts.threads, [&](int j) {
      for (int i = 0; i < grid.nx(); ++i) {
        for (int c = 0; c < n; ++c) {
          double dfx = 0.125 * ((f(i + 1, j + 1, c) - f(i - 1, j + 1, c)) +
                                2.0 * (f(i + 1, j, c) - f(i - 1, j, c)) +
                                (f(i + 1, j - 1, c) - f(i - 1, j - 1, c)));
          double dgy = 0.125 * ((g(i + 1, j + 1, c) - g(i + 1, j - 1, c)) +
                                2.0 * (g(i, j + 1, c) - g(i, j - 1, c)) +
                                (g(i - 1, j + 1, c) - g(i - 1, j - 1, c)));
          rate(i, j, c) += -idx * dfx - idy * dgy;
        }
        // Local central corrections from the directional source integrals.
        rate(i, j, 1) -=
            idx * 0.125 *
            ((incx(i + 1, j + 1, 0) + incx(i, j + 1, 0)) +
             2.0 * (incx(i + 1, j, 0) + incx(i, j, 0)) +
             (incx(i + 1, j - 1, 0) + incx(i, j - 1, 0)));
        rate(i, j, 2) -=
            idy * 0.125 *
            ((incy(i + 1, j + 1, 0) + incy(i + 1, j, 0)) +
             2.0 * (incy(i, j + 1, 0) + incy(i, j, 0)) +
             (incy(i - 1, j + 1, 0) + incy(i - 1, j, 0)));
      }
    });
    return;
  }

  Field s;
  Field* sp = nullptr;
  if (opts.source_mode == SourceMode::generic_recursion) {
    s = Field(grid.nx(), grid.ny(), 1, n);
    sp = &s;
    eval_generic_source(grid, sys, q, opts, s);
  }
  gf_rate_compact_from_pointfluxes(grid, sys, q, f, g, sp, rate, opts.threads);
}

}  // namespace gflux
