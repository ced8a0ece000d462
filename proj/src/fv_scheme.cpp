#include "gflux/fv_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gflux/errors.hpp"
#include "gflux/parallel.hpp"

namespace gflux {

double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

void limited_slope(std::span<const double> qm, std::span<const double> q0,
                   std::span<const double> qp, double dx, double theta,
                   std::span<double> slope) {
  for (std::size_t c = 0; c < q0.size(); ++c)
    slope[c] = minmod3(theta * (q0[c] - qm[c]) / dx,
                       (qp[c] - qm[c]) / (2.0 * dx),
                       theta * (qp[c] - q0[c]) / dx);
}

void rusanov_flux(const System& sys, std::span<const double> ql,
                  std::span<const double> qr, Axis dir,
                  std::span<double> out) {
  const int n = sys.n_eq();
  double fl[kMaxComp], fr[kMaxComp];
  sys.flux(ql, dir, std::span<double>(fl, static_cast<std::size_t>(n)));
  sys.flux(qr, dir, std::span<double>(fr, static_cast<std::size_t>(n)));
  double lam = std::max(sys.max_wave_speed(ql), sys.max_wave_speed(qr));
  for (int c = 0; c < n; ++c)
    out[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * lam * (qr[c] - ql[c]);
}

namespace {

std::string cell_tag(int i, int j) {
  return "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

void fv_rate(const Grid& grid, const System& sys, Field& q,
             const BoundarySpec& bc, const FvOptions& opts, Field& rate) {
  const int nx = grid.nx(), ny = grid.ny();
  const int n = sys.n_eq();
  if (opts.order != 1 && opts.order != 2)
    throw ConfigError("fv: order must be 1 or 2");
  if (opts.order == 2 && q.ghost() < 2)
    throw ConfigError("fv: order 2 needs a ghost width of 2");

  fill_state_ghosts(grid, q, bc);

  // Slopes on the interior plus one ghost ring (zeroed there when the
  // adjacent side is not periodic).
  Field sx(nx, ny, 1, n), sy(nx, ny, 1, n);
  if (opts.order == 2) {
    parallel_for(ny + 2, opts.threads, [&](int jj) {
      int j = jj - 1;
      double sl[kMaxComp];
      for (int i = -1; i <= nx; ++i) {
        bool ghost_x = (i < 0 && !bc.periodic_x()) ||
                       (i >= nx && !bc.periodic_x());
        bool ghost_y = (j < 0 && !bc.periodic_y()) ||
                       (j >= ny && !bc.periodic_y());
        std::span<double> sxc = sx.cell(i, j), syc = sy.cell(i, j);
        if (ghost_x || ghost_y) {
          // Outermost ring next to a non-periodic side: first order.
          for (int c = 0; c < n; ++c) sxc[c] = syc[c] = 0.0;
          continue;
        }
        limited_slope(q.cell(i - 1, j), q.cell(i, j), q.cell(i + 1, j),
                      grid.dx(), opts.theta,
                      std::span<double>(sl, static_cast<std::size_t>(n)));
        std::copy(sl, sl + n, sxc.begin());
        limited_slope(q.cell(i, j - 1), q.cell(i, j), q.cell(i, j + 1),
                      grid.dy(), opts.theta,
                      std::span<double>(sl, static_cast<std::size_t>(n)));
        std::copy(sl, sl + n, syc.begin());
      }
    });
  }

  // Interface fluxes, x then y.  fx(i,j,:) is the flux through the face
  // between cells (i-1,j) and (i,j); same convention for fy in y.
  Field fx(nx + 1, ny, 0, n), fy(nx, ny + 1, 0, n);
  const double hdx = 0.5 * grid.dx(), hdy = 0.5 * grid.dy();
  parallel_for(ny, opts.threads, [&](int j) {
    double ql[kMaxComp], qr[kMaxComp];
    for (int i = 0; i <= nx; ++i) {
      try {
        for (int c = 0; c < n; ++c) {
          ql[c] = q(i - 1, j, c);
          qr[c] = q(i, j, c);
          if (opts.order == 2) {
            ql[c] += hdx * sx(i - 1, j, c);
            qr[c] -= hdx * sx(i, j, c);
          }
        }
        rusanov_flux(sys, std::span<const double>(ql, static_cast<std::size_t>(n)),
                     std::span<const double>(qr, static_cast<std::size_t>(n)),
                     Axis::x, fx.cell(i, j));
      } catch (const std::domain_error& e) {
        throw SolverError(std::string(e.what()) + " at x-face left of " +
                          cell_tag(i, j));
      }
    }
  });
  parallel_for(ny + 1, opts.threads, [&](int j) {
    double ql[kMaxComp], qr[kMaxComp];
    for (int i = 0; i < nx; ++i) {
      try {
        for (int c = 0; c < n; ++c) {
          ql[c] = q(i, j - 1, c);
          qr[c] = q(i, j, c);
          if (opts.order == 2) {
            ql[c] += hdy * sy(i, j - 1, c);
            qr[c] -= hdy * sy(i, j, c);
          }
        }
        rusanov_flux(sys, std::span<const double>(ql, static_cast<std::size_t>(n)),
                     std::span<const double>(qr, static_cast<std::size_t>(n)),
                     Axis::y, fy.cell(i, j));
      } catch (const std::domain_error& e) {
        throw SolverError(std::string(e.what()) + " at y-face below " +
                          cell_tag(i, j));
      }
    }
  });

  const double idx = 1.0 / grid.dx(), idy = 1.0 / grid.dy();
  const bool swe_src =
      sys.id() == SystemId::shallow_water && opts.bathymetry != nullptr;
  const Field* b = opts.bathymetry;
  parallel_for(ny, opts.threads, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      for (int c = 0; c < n; ++c)
        rate(i, j, c) = -idx * (fx(i + 1, j, c) - fx(i, j, c)) -
                        idy * (fy(i, j + 1, c) - fy(i, j, c));
      if (swe_src) {
        double h = q(i, j, 0);
        rate(i, j, 1) -= opts.gravity * h *
                         ((*b)(i + 1, j, 0) - (*b)(i - 1, j, 0)) * (0.5 * idx);
        rate(i, j, 2) -= opts.gravity * h *
                         ((*b)(i, j + 1, 0) - (*b)(i, j - 1, 0)) * (0.5 * idy);
      }
    }
  });
}

}  // namespace gflux
