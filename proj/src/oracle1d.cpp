#include "gflux/oracle1d.hpp"

#include <algorithm>
#include <cmath>

namespace gflux {

void rusanov_1d_rate(const Line1D& line, const System& sys,
                     std::vector<double>& rate) {
  const int n = line.n, nc = line.ncomp;
  rate.assign(static_cast<std::size_t>(n) * nc, 0.0);
  std::vector<double> fhat(static_cast<std::size_t>(n + 1) * nc);
  double fl[kMaxComp], fr[kMaxComp];
  for (int i = 0; i <= n; ++i) {
    auto ql = line.cell(i - 1), qr = line.cell(i);
    sys.flux(ql, Axis::x, std::span<double>(fl, static_cast<std::size_t>(nc)));
    sys.flux(qr, Axis::x, std::span<double>(fr, static_cast<std::size_t>(nc)));
    double lam = std::max(sys.max_wave_speed(ql), sys.max_wave_speed(qr));
    for (int c = 0; c < nc; ++c)
      fhat[static_cast<std::size_t>(i) * nc + c] =
          0.5 * (fl[c] + fr[c]) - 0.5 * lam * (qr[c] - ql[c]);
  }
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < nc; ++c)
      rate[static_cast<std::size_t>(i) * nc + c] =
          -(fhat[static_cast<std::size_t>(i + 1) * nc + c] -
            fhat[static_cast<std::size_t>(i) * nc + c]) /
          line.dx;
}

void gf_quasi1d_flux(const Line1D& line, const System& sys,
                     std::span<const double> s, std::vector<double>& fhat) {
  const int n = line.n, nc = line.ncomp;
  fhat.assign(static_cast<std::size_t>(n + 1) * nc, 0.0);
  double fl[kMaxComp], fr[kMaxComp], qbar[kMaxComp], jac[kMaxComp * kMaxComp];
  double arg[kMaxComp], jarg[kMaxComp];
  auto src = [&](int i, int c) -> double {
    if (s.empty()) return 0.0;
    int w = ((i % n) + n) % n;
    return s[static_cast<std::size_t>(w) * nc + c];
  };
  for (int i = 0; i <= n; ++i) {
    auto ql = line.cell(i - 1), qr = line.cell(i);
    sys.flux(ql, Axis::x, std::span<double>(fl, static_cast<std::size_t>(nc)));
    sys.flux(qr, Axis::x, std::span<double>(fr, static_cast<std::size_t>(nc)));
    for (int c = 0; c < nc; ++c) {
      qbar[c] = 0.5 * (ql[c] + qr[c]);
      arg[c] = fr[c] - fl[c] -
               0.5 * line.dx * (src(i - 1, c) + src(i, c));
    }
    std::span<const double> qb(qbar, static_cast<std::size_t>(nc));
    sys.jacobian(qb, Axis::x,
                 std::span<double>(jac, static_cast<std::size_t>(nc) * nc));
    double alpha = 1.0 / sys.max_wave_speed(qb);
    matvec(nc, std::span<const double>(jac, static_cast<std::size_t>(nc) * nc),
           std::span<const double>(arg, static_cast<std::size_t>(nc)),
           std::span<double>(jarg, static_cast<std::size_t>(nc)));
    for (int c = 0; c < nc; ++c)
      fhat[static_cast<std::size_t>(i) * nc + c] =
          0.5 * (fl[c] + fr[c]) - 0.5 * alpha * jarg[c];
  }
}

}  // namespace gflux
