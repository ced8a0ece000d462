// One-dimensional reference kernels: the periodic Rusanov line rate and the
// quasi-1D reduction of the corner scheme, checked on states where the
// answer is known in closed form.

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "gflux/oracle1d.hpp"
#include "gflux/system.hpp"
#include "test_util.hpp"

using namespace gflux;
using test::Rng;

TEST_CASE("uniform line has zero rusanov rate") {
  Rng rng(3);
  for (const auto& sys : test::all_systems()) {
    const int nc = sys->n_eq();
    Line1D line(8, nc, 0.125);
    std::array<double, kMaxComp> state{};
    test::random_state(rng, *sys, {state.data(), static_cast<std::size_t>(nc)});
    for (int i = 0; i < line.n; ++i)
      for (int c = 0; c < nc; ++c) line.cell(i)[c] = state[c];
    std::vector<double> rate;
    rusanov_1d_rate(line, *sys, rate);
    for (double r : rate) CHECK(r == 0.0);
  }
}

TEST_CASE("two-cell acoustic riemann rate by hand") {
  auto sys = make_acoustics();
  Line1D line(2, 3, 0.5);
  line.cell(0)[0] = 0.0;
  line.cell(0)[1] = 0.0;
  line.cell(0)[2] = 1.0;
  // cell 1 stays zero
  std::vector<double> rate;
  rusanov_1d_rate(line, *sys, rate);
  // Interface fluxes: (0.5, 0, +-0.5); the pressure jump drains cell 0.
  CHECK(rate[0] == doctest::Approx(0.0));
  CHECK(rate[1] == doctest::Approx(0.0));
  CHECK(rate[2] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(rate[3] == doctest::Approx(0.0));
  CHECK(rate[4] == doctest::Approx(0.0));
  CHECK(rate[5] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("rusanov line rate telescopes to zero total") {
  Rng rng(5);
  for (const auto& sys : test::all_systems()) {
    const int nc = sys->n_eq();
    Line1D line(16, nc, 1.0 / 16.0);
    for (int i = 0; i < line.n; ++i)
      test::random_state(rng, *sys, line.cell(i));
    std::vector<double> rate;
    rusanov_1d_rate(line, *sys, rate);
    for (int c = 0; c < nc; ++c) {
      double total = 0.0, scale = 0.0;
      for (int i = 0; i < line.n; ++i) {
        total += rate[static_cast<std::size_t>(i) * nc + c];
        scale = std::max(scale,
                         std::abs(rate[static_cast<std::size_t>(i) * nc + c]));
      }
      CHECK(std::abs(total) * line.dx <= 1e-13 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("quasi-1d flux is consistent on a constant state") {
  Rng rng(7);
  for (const auto& sys : test::all_systems()) {
    const int nc = sys->n_eq();
    Line1D line(6, nc, 0.2);
    std::array<double, kMaxComp> state{}, f{};
    test::random_state(rng, *sys, {state.data(), static_cast<std::size_t>(nc)});
    for (int i = 0; i < line.n; ++i)
      for (int c = 0; c < nc; ++c) line.cell(i)[c] = state[c];
    sys->flux({state.data(), static_cast<std::size_t>(nc)}, Axis::x, f);
    std::vector<double> fhat;
    gf_quasi1d_flux(line, *sys, {}, fhat);
    REQUIRE(fhat.size() == static_cast<std::size_t>(line.n + 1) * nc);
    for (int i = 0; i <= line.n; ++i)
      for (int c = 0; c < nc; ++c)
        CHECK(fhat[static_cast<std::size_t>(i) * nc + c] ==
              doctest::Approx(f[c]).epsilon(1e-14));
  }
}

TEST_CASE("discretely balanced source removes the quasi-1d dissipation") {
  // When f_{i} - f_{i-1} = (dx/2)(s_{i-1} + s_i) at an interface, the
  // stabilization argument vanishes and the flux reduces to the plain
  // central average.
  Rng rng(11);
  auto sys = make_euler();
  const int nc = sys->n_eq();
  const int n = 12;
  Line1D line(n, nc, 0.1);
  for (int i = 0; i < n; ++i) test::random_state(rng, *sys, line.cell(i));

  std::vector<double> f(static_cast<std::size_t>(n) * nc);
  for (int i = 0; i < n; ++i)
    sys->flux(line.cell(i), Axis::x,
              std::span<double>(f.data() + static_cast<std::size_t>(i) * nc,
                                static_cast<std::size_t>(nc)));

  // Build s by the two-term recursion; the wrap interface need not balance.
  std::vector<double> s(static_cast<std::size_t>(n) * nc, 0.0);
  for (int c = 0; c < nc; ++c) s[c] = 0.37;  // arbitrary start values
  for (int i = 1; i < n; ++i)
    for (int c = 0; c < nc; ++c) {
      const double df = f[static_cast<std::size_t>(i) * nc + c] -
                        f[static_cast<std::size_t>(i - 1) * nc + c];
      s[static_cast<std::size_t>(i) * nc + c] =
          2.0 * df / line.dx - s[static_cast<std::size_t>(i - 1) * nc + c];
    }

  std::vector<double> fhat;
  gf_quasi1d_flux(line, *sys, s, fhat);
  for (int i = 1; i < n; ++i)  // interior interfaces only
    for (int c = 0; c < nc; ++c) {
      const double central = 0.5 * (f[static_cast<std::size_t>(i - 1) * nc + c] +
                                    f[static_cast<std::size_t>(i) * nc + c]);
      CHECK(std::abs(fhat[static_cast<std::size_t>(i) * nc + c] - central) <=
            1e-11 * std::max(1.0, std::abs(central)));
    }
}

TEST_CASE("quasi-1d flux adds upwind-style dissipation on a jump") {
  // Acoustic pressure jump: J^x maps the flux jump (Delta p, 0, Delta u)
  // to (Delta u, 0, Delta p), so the interface flux gains -(alpha/2) of it.
  auto sys = make_acoustics();
  Line1D line(2, 3, 1.0);
  line.cell(0)[2] = 1.0;  // p jump of -1 from cell 0 to cell 1
  std::vector<double> fhat;
  gf_quasi1d_flux(line, *sys, {}, fhat);
  // Interface 1 (between cells 0 and 1): central (0.5, 0, 0),
  // f_r - f_l = (-1, 0, 0), J arg = (0, 0, -1), alpha = 1.
  CHECK(fhat[3] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fhat[4] == doctest::Approx(0.0));
  CHECK(fhat[5] == doctest::Approx(0.5).epsilon(1e-14));
}
