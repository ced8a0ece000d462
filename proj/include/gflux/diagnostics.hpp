#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gflux/field.hpp"
#include "gflux/grid.hpp"
#include "gflux/system.hpp"

namespace gflux {

// ---------------------------------------------------------------------------
// Error norms and scalar monitors
// ---------------------------------------------------------------------------

struct ErrorNorms {
  std::vector<double> l2;    // sqrt(dx*dy * sum of squared differences)
  std::vector<double> linf;  // max absolute difference
};

// Per-component norms of (q - ref) over interior cells.
ErrorNorms error_norms(const Grid& grid, const Field& q, const Field& ref);

// Quadratic acoustic energy dx*dy * sum (u^2 + v^2 + p^2) / 2.
double acoustic_energy(const Grid& grid, const Field& q);

// Largest |velocity| / largest signal speed over interior cells.
double max_velocity_norm(const System& sys, const Grid& grid, const Field& q);
double max_wave_speed_field(const System& sys, const Grid& grid,
                            const Field& q);

// dx*dy * sum over interior cells, one total per component.
std::vector<double> conserved_totals(const Grid& grid, const Field& q);

// max_c |now[c] - initial[c]| / max(|initial[c]|, 1).
double conservation_drift(std::span<const double> initial,
                          std::span<const double> now);

// FNV-1a over the bytes of the interior cells (row by row), for making runs
// comparable across machines and reruns.
std::uint64_t field_hash(const Field& q);

// ---------------------------------------------------------------------------
// Dense operator algebra (test-scale periodic grids)
// ---------------------------------------------------------------------------

// Row-major dense matrices; deliberately naive, intended for small n.
namespace dense {

std::vector<double> identity(int n);
std::vector<double> matmul(const std::vector<double>& a,
                           const std::vector<double>& b, int n);
std::vector<double> transpose(const std::vector<double>& a, int n);
// Kronecker product of an (na x na) and an (nb x nb) matrix.
std::vector<double> kron(const std::vector<double>& a, int na,
                         const std::vector<double>& b, int nb);
void apply(const std::vector<double>& m, int n, std::span<const double> x,
           std::span<double> y);

}  // namespace dense

// Circulant building blocks and the assembled global-flux difference
// operators on an n x n periodic grid.  2D operators act on x-major flattened
// fields (index i*n + j) and include the mesh scalings.
struct OperatorSet {
  int n = 0;
  double dx = 1.0, dy = 1.0;

  std::vector<double> dp, dm, mp, mm;  // n x n: forward/backward diff & avg

  std::vector<double> dbarx;   // central x-derivative, y-averaged
  std::vector<double> dbary;   // central y-derivative, x-averaged
  std::vector<double> dbarxx;  // wide second x-derivative, y-averaged
  std::vector<double> dbaryy;  // wide second y-derivative, x-averaged
  std::vector<double> dxy;     // mixed central derivative

  std::vector<double> fx;  // (D- (x) M-) / dx, dissipation factor
  std::vector<double> fy;  // (M- (x) D-) / dy, dissipation factor
};

OperatorSet build_operator_set(int n, double dx, double dy);

// Interior values of one component, flattened x-major (index i*ny + j).
std::vector<double> flatten_component(const Field& q, int comp);

// Energy production of the acoustic stabilization term evaluated two ways on
// flattened fields u, v, p of length n^2: once through the assembled
// operators,
//   (delta/2) dx dy [ <u, Dxx u + Dxy v> + <v, Dxy u + Dyy v>
//                     + <p, (Dxx + Dyy) p> ],
// and once through the negative-definite factorization
//   -(delta/2) dx dy [ |fx u + fy v|^2 + |fx p|^2 + |fy p|^2 ].
// The two agree identically; both are exposed so tests can verify it.
double stabilization_energy_form(const OperatorSet& ops,
                                 std::span<const double> u,
                                 std::span<const double> v,
                                 std::span<const double> p, double delta);
double stabilization_energy_factored(const OperatorSet& ops,
                                     std::span<const double> u,
                                     std::span<const double> v,
                                     std::span<const double> p, double delta);

}  // namespace gflux
