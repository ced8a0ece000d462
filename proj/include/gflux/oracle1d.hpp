#pragma once

#include <span>
#include <vector>

#include "gflux/system.hpp"

namespace gflux {

// Minimal 1D periodic line of cell averages used as an independent oracle
// for the 2D schemes on y- (or x-) constant data.  Not part of the CLI.
struct Line1D {
  int n = 0;        // number of cells
  int ncomp = 0;
  double dx = 0.0;
  std::vector<double> q;  // n * ncomp, cell-major

  Line1D(int n_, int ncomp_, double dx_)
      : n(n_), ncomp(ncomp_), dx(dx_), q(static_cast<std::size_t>(n_) * ncomp_, 0.0) {}

  std::span<double> cell(int i) {
    int w = ((i % n) + n) % n;
    return {q.data() + static_cast<std::size_t>(w) * ncomp,
            static_cast<std::size_t>(ncomp)};
  }
  std::span<const double> cell(int i) const {
    int w = ((i % n) + n) % n;
    return {q.data() + static_cast<std::size_t>(w) * ncomp,
            static_cast<std::size_t>(ncomp)};
  }
};

// First-order Rusanov semi-discrete rate on the periodic line.
void rusanov_1d_rate(const Line1D& line, const System& sys,
                     std::vector<double>& rate);

// Quasi-1D reduction of the global-flux corner scheme (square cells):
// fhat_{i+1/2} = (f_i+f_{i+1})/2
//              - (alpha/2) J(qbar) (f_{i+1}-f_i - (dx/2)(s_i+s_{i+1})),
// with qbar the two-cell mean and alpha = 1/lambda_max(qbar).
// fhat[i] is the flux through the interface between cells i-1 and i.
// s may be empty (treated as zero).
void gf_quasi1d_flux(const Line1D& line, const System& sys,
                     std::span<const double> s, std::vector<double>& fhat);

}  // namespace gflux
