#include "gflux/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace gflux {

ErrorNorms error_norms(const Grid& grid, const Field& q, const Field& ref) {
  if (q.nx() != ref.nx() || q.ny() != ref.ny() || q.ncomp() != ref.ncomp())
    throw std::invalid_argument("error_norms: field shapes differ");
  const int n = q.ncomp();
  ErrorNorms norms{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      for (int c = 0; c < n; ++c) {
        const double d = q(i, j, c) - ref(i, j, c);
        norms.l2[c] += d * d;
        norms.linf[c] = std::max(norms.linf[c], std::abs(d));
      }
  for (int c = 0; c < n; ++c)
    norms.l2[c] = std::sqrt(grid.dx() * grid.dy() * norms.l2[c]);
  return norms;
}

double acoustic_energy(const Grid& grid, const Field& q) {
  double e = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      e += q(i, j, 0) * q(i, j, 0) + q(i, j, 1) * q(i, j, 1) +
           q(i, j, 2) * q(i, j, 2);
  return 0.5 * grid.dx() * grid.dy() * e;
}

double max_velocity_norm(const System& sys, const Grid& grid, const Field& q) {
  double m = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      double u, v;
      sys.velocity(q.cell(i, j), u, v);
      m = std::max(m, std::hypot(u, v));
    }
  return m;
}

double max_wave_speed_field(const System& sys, const Grid& grid,
                            const Field& q) {
  double m = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      m = std::max(m, sys.max_wave_speed(q.cell(i, j)));
  return m;
}

std::vector<double> conserved_totals(const Grid& grid, const Field& q) {
  std::vector<double> tot(q.ncomp(), 0.0);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      for (int c = 0; c < q.ncomp(); ++c) tot[c] += q(i, j, c);
  for (double& t : tot) t *= grid.dx() * grid.dy();
  return tot;
}

double conservation_drift(std::span<const double> initial,
                          std::span<const double> now) {
  double drift = 0.0;
  for (std::size_t c = 0; c < initial.size(); ++c)
    drift = std::max(drift, std::abs(now[c] - initial[c]) /
                                std::max(std::abs(initial[c]), 1.0));
  return drift;
}

std::uint64_t field_hash(const Field& q) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  auto mix = [&h](const void* p, std::size_t nbytes) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < nbytes; ++k) {
      h ^= b[k];
      h *= 1099511628211ull;  // FNV-1a prime
    }
  };
  for (int j = 0; j < q.ny(); ++j)
    for (int i = 0; i < q.nx(); ++i) {
      auto c = q.cell(i, j);
      mix(c.data(), c.size() * sizeof(double));
    }
  return h;
}

// ---------------------------------------------------------------------------
// Dense operator algebra
// ---------------------------------------------------------------------------

namespace dense {

std::vector<double> identity(int n) {
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1.0;
  return m;
}

std::vector<double> matmul(const std::vector<double>& a,
                           const std::vector<double>& b, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(i) * n + j] +=
            aik * b[static_cast<std::size_t>(k) * n + j];
    }
  return c;
}

std::vector<double> transpose(const std::vector<double>& a, int n) {
  std::vector<double> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[static_cast<std::size_t>(j) * n + i] =
          a[static_cast<std::size_t>(i) * n + j];
  return t;
}

std::vector<double> kron(const std::vector<double>& a, int na,
                         const std::vector<double>& b, int nb) {
  const int n = na * nb;
  std::vector<double> k(static_cast<std::size_t>(n) * n, 0.0);
  for (int ia = 0; ia < na; ++ia)
    for (int ja = 0; ja < na; ++ja) {
      const double aij = a[static_cast<std::size_t>(ia) * na + ja];
      if (aij == 0.0) continue;
      for (int ib = 0; ib < nb; ++ib)
        for (int jb = 0; jb < nb; ++jb)
          k[static_cast<std::size_t>(ia * nb + ib) * n + (ja * nb + jb)] =
              aij * b[static_cast<std::size_t>(ib) * nb + jb];
    }
  return k;
}

void apply(const std::vector<double>& m, int n, std::span<const double> x,
           std::span<double> y) {
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += m[static_cast<std::size_t>(i) * n + j] * x[j];
    y[i] = acc;
  }
}

}  // namespace dense

namespace {

// Periodic circulant with value `diag` on the diagonal and `off` on the
// (cyclic) superdiagonal.
std::vector<double> circulant_up(int n, double diag, double off) {
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    m[static_cast<std::size_t>(i) * n + i] = diag;
    m[static_cast<std::size_t>(i) * n + (i + 1) % n] = off;
  }
  return m;
}

std::vector<double> scaled(std::vector<double> m, double s) {
  for (double& v : m) v *= s;
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

OperatorSet build_operator_set(int n, double dx, double dy) {
  OperatorSet ops;
  ops.n = n;
  ops.dx = dx;
  ops.dy = dy;

  ops.dp = circulant_up(n, -1.0, 1.0);      // u_{i+1} - u_i
  ops.mp = circulant_up(n, 0.5, 0.5);       // (u_i + u_{i+1}) / 2
  ops.dm = scaled(dense::transpose(ops.dp, n), -1.0);  // u_i - u_{i-1}
  ops.mm = dense::transpose(ops.mp, n);                // (u_{i-1} + u_i) / 2

  const auto cd = dense::matmul(ops.dp, ops.mm, n);   // central difference
  const auto av = dense::matmul(ops.mp, ops.mm, n);   // wide average
  const auto d2 = dense::matmul(ops.dp, ops.dm, n);   // second difference

  ops.dbarx = scaled(dense::kron(cd, n, av, n), 1.0 / dx);
  ops.dbary = scaled(dense::kron(av, n, cd, n), 1.0 / dy);
  ops.dbarxx = scaled(dense::kron(d2, n, av, n), 1.0 / (dx * dx));
  ops.dbaryy = scaled(dense::kron(av, n, d2, n), 1.0 / (dy * dy));
  ops.dxy = scaled(dense::kron(cd, n, cd, n), 1.0 / (dx * dy));

  ops.fx = scaled(dense::kron(ops.dm, n, ops.mm, n), 1.0 / dx);
  ops.fy = scaled(dense::kron(ops.mm, n, ops.dm, n), 1.0 / dy);
  return ops;
}

std::vector<double> flatten_component(const Field& q, int comp) {
  std::vector<double> v(static_cast<std::size_t>(q.nx()) * q.ny());
  for (int i = 0; i < q.nx(); ++i)
    for (int j = 0; j < q.ny(); ++j)
      v[static_cast<std::size_t>(i) * q.ny() + j] = q(i, j, comp);
  return v;
}

double stabilization_energy_form(const OperatorSet& ops,
                                 std::span<const double> u,
                                 std::span<const double> v,
                                 std::span<const double> p, double delta) {
  const int n2 = ops.n * ops.n;
  std::vector<double> a(n2), b(n2);
  double e = 0.0;
  dense::apply(ops.dbarxx, n2, u, a);
  dense::apply(ops.dxy, n2, v, b);
  for (int k = 0; k < n2; ++k) e += u[k] * (a[k] + b[k]);
  dense::apply(ops.dxy, n2, u, a);
  dense::apply(ops.dbaryy, n2, v, b);
  for (int k = 0; k < n2; ++k) e += v[k] * (a[k] + b[k]);
  dense::apply(ops.dbarxx, n2, p, a);
  dense::apply(ops.dbaryy, n2, p, b);
  for (int k = 0; k < n2; ++k) e += p[k] * (a[k] + b[k]);
  return 0.5 * delta * ops.dx * ops.dy * e;
}

double stabilization_energy_factored(const OperatorSet& ops,
                                     std::span<const double> u,
                                     std::span<const double> v,
                                     std::span<const double> p, double delta) {
  const int n2 = ops.n * ops.n;
  std::vector<double> a(n2), b(n2);
  dense::apply(ops.fx, n2, u, a);
  dense::apply(ops.fy, n2, v, b);
  for (int k = 0; k < n2; ++k) a[k] += b[k];
  double e = dot(a, a);
  dense::apply(ops.fx, n2, p, a);
  e += dot(a, a);
  dense::apply(ops.fy, n2, p, a);
  e += dot(a, a);
  return -0.5 * delta * ops.dx * ops.dy * e;
}

}  // namespace gflux
