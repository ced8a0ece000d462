// Hyperbolic system kernels: flux values, analytic Jacobians against finite
// differences, wave speeds against the analytic spectrum, primitive round
// trips, rotational symmetry, and admissibility guards.

#include <doctest.h>

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

#include "gflux/system.hpp"
#include "test_util.hpp"

using namespace gflux;
using test::Rng;

namespace {

// Determinant by partial-pivot elimination (n <= 4).
double det_n(std::array<double, 16> a, int n) {
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(a[r * n + k]) > std::abs(a[piv * n + k])) piv = r;
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      det = -det;
    }
    if (a[k * n + k] == 0.0) return 0.0;
    det *= a[k * n + k];
    for (int r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / a[k * n + k];
      for (int c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  return det;
}

// Analytic eigenvalues of the directional Jacobian.
std::vector<double> analytic_eigenvalues(const System& sys,
                                         std::span<const double> q, Axis dir) {
  double u, v;
  sys.velocity(q, u, v);
  const double un = dir == Axis::x ? u : v;
  const double c = sys.sound_speed(q);
  switch (sys.id()) {
    case SystemId::acoustics:
      return {0.0, c, -c};
    case SystemId::euler:
      return {un, un, un - c, un + c};
    case SystemId::shallow_water:
      return {un, un - c, un + c};
  }
  return {};
}

// State under the reflection (x, y) -> (y, x): velocity-like components swap.
std::array<double, kMaxComp> swap_state(const System& sys,
                                        std::span<const double> q) {
  std::array<double, kMaxComp> s{};
  for (int c = 0; c < sys.n_eq(); ++c) s[c] = q[c];
  if (sys.id() == SystemId::acoustics)
    std::swap(s[0], s[1]);  // (u, v, p)
  else
    std::swap(s[1], s[2]);  // momenta
  return s;
}

}  // namespace

TEST_CASE("flux values on reference states") {
  auto ac = make_acoustics();
  std::array<double, 3> q{0.3, -0.2, 0.9}, f{};
  ac->flux(q, Axis::x, f);  // (p, 0, u)
  CHECK(f[0] == doctest::Approx(0.9));
  CHECK(f[1] == doctest::Approx(0.0));
  CHECK(f[2] == doctest::Approx(0.3));
  ac->flux(q, Axis::y, f);  // (0, p, v)
  CHECK(f[0] == doctest::Approx(0.0));
  CHECK(f[1] == doctest::Approx(0.9));
  CHECK(f[2] == doctest::Approx(-0.2));

  auto eu = make_euler();
  std::array<double, 4> qe{1.0, 0.0, 0.0, 2.5}, fe{};
  eu->flux(qe, Axis::x, fe);  // p = 0.4 * 2.5 = 1
  CHECK(fe[0] == doctest::Approx(0.0));
  CHECK(fe[1] == doctest::Approx(1.0));
  CHECK(fe[2] == doctest::Approx(0.0));
  CHECK(fe[3] == doctest::Approx(0.0));
  // Moving state via primitives (rho, u, v, p) = (2, 0.5, -0.3, 1.5).
  std::array<double, 4> prim{2.0, 0.5, -0.3, 1.5}, qm{};
  eu->prim_to_cons(prim, qm);
  eu->flux(qm, Axis::x, fe);
  CHECK(fe[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fe[1] == doctest::Approx(2.0).epsilon(1e-14));    // rho u^2 + p
  CHECK(fe[2] == doctest::Approx(-0.3).epsilon(1e-14));   // rho u v
  CHECK(fe[3] == doctest::Approx(2.795).epsilon(1e-14));  // (E + p) u

  auto sw = make_shallow_water();
  std::array<double, 3> qs{2.0, 6.0, 0.0}, fs{};
  sw->flux(qs, Axis::x, fs);  // (hu, hu^2/h + g h^2/2, hu hv / h)
  CHECK(fs[0] == doctest::Approx(6.0));
  CHECK(fs[1] == doctest::Approx(37.624).epsilon(1e-14));
  CHECK(fs[2] == doctest::Approx(0.0));
  std::array<double, 3> qy{2.0, 0.0, 6.0};
  sw->flux(qy, Axis::y, fs);
  CHECK(fs[0] == doctest::Approx(6.0));
  CHECK(fs[1] == doctest::Approx(0.0));
  CHECK(fs[2] == doctest::Approx(37.624).epsilon(1e-14));
}

TEST_CASE("jacobian values on reference states") {
  auto ac = make_acoustics();
  std::array<double, 3> q{0.1, 0.2, 0.3};
  std::array<double, 9> j{};
  ac->jacobian(q, Axis::x, j);
  const std::array<double, 9> jx_expect{0, 0, 1, 0, 0, 0, 1, 0, 0};
  for (int k = 0; k < 9; ++k) CHECK(j[k] == doctest::Approx(jx_expect[k]));
  ac->jacobian(q, Axis::y, j);
  const std::array<double, 9> jy_expect{0, 0, 0, 0, 0, 1, 0, 1, 0};
  for (int k = 0; k < 9; ++k) CHECK(j[k] == doctest::Approx(jy_expect[k]));

  auto sw = make_shallow_water();
  std::array<double, 3> qs{1.0, 0.0, 0.0};
  sw->jacobian(qs, Axis::x, j);
  const std::array<double, 9> js_expect{0, 1, 0, 9.812, 0, 0, 0, 0, 0};
  for (int k = 0; k < 9; ++k)
    CHECK(j[k] == doctest::Approx(js_expect[k]).epsilon(1e-14));
}

TEST_CASE("jacobians match central finite differences of the flux") {
  Rng rng(2024);
  for (const auto& sys : test::all_systems()) {
    const int n = sys->n_eq();
    for (int trial = 0; trial < 100; ++trial) {
      std::array<double, kMaxComp> q{};
      test::random_state(rng, *sys, {q.data(), static_cast<std::size_t>(n)});
      for (Axis dir : {Axis::x, Axis::y}) {
        std::array<double, kMaxComp * kMaxComp> jac{};
        sys->jacobian({q.data(), static_cast<std::size_t>(n)}, dir, jac);
        double jscale = 1.0;
        for (int k = 0; k < n * n; ++k)
          jscale = std::max(jscale, std::abs(jac[k]));
        for (int c = 0; c < n; ++c) {
          const double h = 1e-6 * std::max(1.0, std::abs(q[c]));
          std::array<double, kMaxComp> qp = q, qm = q, fp{}, fm{};
          qp[c] += h;
          qm[c] -= h;
          sys->flux({qp.data(), static_cast<std::size_t>(n)}, dir, fp);
          sys->flux({qm.data(), static_cast<std::size_t>(n)}, dir, fm);
          for (int r = 0; r < n; ++r) {
            const double fd = (fp[r] - fm[r]) / (2.0 * h);
            CHECK(std::abs(fd - jac[r * n + c]) <= 1e-6 * jscale);
          }
        }
      }
    }
  }
}

TEST_CASE("wave speeds on reference states") {
  auto ac = make_acoustics();
  std::array<double, 3> q{5.0, -3.0, 100.0};
  CHECK(ac->max_wave_speed(q) == 1.0);
  CHECK(ac->sound_speed(q) == 1.0);

  auto eu = make_euler();
  std::array<double, 4> qe{1.0, 0.0, 0.0, 2.5};
  CHECK(eu->max_wave_speed(qe) ==
        doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));
  CHECK(eu->sound_speed(qe) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

  auto sw = make_shallow_water();
  std::array<double, 3> qs{1.0, 0.0, 0.0};
  CHECK(sw->max_wave_speed(qs) ==
        doctest::Approx(std::sqrt(9.812)).epsilon(1e-14));
  // Speed adds the largest velocity component magnitude.
  std::array<double, 3> qm{1.0, 2.0, -3.0};
  CHECK(sw->max_wave_speed(qm) ==
        doctest::Approx(3.0 + std::sqrt(9.812)).epsilon(1e-14));
}

TEST_CASE("analytic spectrum: roots of det(J - lambda I) within the bound") {
  Rng rng(7);
  for (const auto& sys : test::all_systems()) {
    const int n = sys->n_eq();
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, kMaxComp> q{};
      test::random_state(rng, *sys, {q.data(), static_cast<std::size_t>(n)});
      const double bound =
          sys->max_wave_speed({q.data(), static_cast<std::size_t>(n)});
      for (Axis dir : {Axis::x, Axis::y}) {
        std::array<double, kMaxComp * kMaxComp> jac{};
        sys->jacobian({q.data(), static_cast<std::size_t>(n)}, dir, jac);
        double jscale = 1.0;
        for (int k = 0; k < n * n; ++k)
          jscale = std::max(jscale, std::abs(jac[k]));
        for (double lam : analytic_eigenvalues(
                 *sys, {q.data(), static_cast<std::size_t>(n)}, dir)) {
          std::array<double, 16> shifted{};
          for (int k = 0; k < n * n; ++k) shifted[k] = jac[k];
          for (int d = 0; d < n; ++d) shifted[d * n + d] -= lam;
          const double scale = std::pow(jscale + std::abs(lam), n);
          CHECK(std::abs(det_n(shifted, n)) <= 1e-10 * scale);
          CHECK(std::abs(lam) <= bound + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("x and y fluxes are related by swapping the velocity components") {
  Rng rng(11);
  for (const auto& sys : test::all_systems()) {
    const int n = sys->n_eq();
    for (int trial = 0; trial < 30; ++trial) {
      std::array<double, kMaxComp> q{};
      test::random_state(rng, *sys, {q.data(), static_cast<std::size_t>(n)});
      const auto qs = swap_state(*sys, {q.data(), static_cast<std::size_t>(n)});
      std::array<double, kMaxComp> fy{}, fx_swapped{};
      sys->flux({q.data(), static_cast<std::size_t>(n)}, Axis::y, fy);
      sys->flux({qs.data(), static_cast<std::size_t>(n)}, Axis::x, fx_swapped);
      const auto fy_expect =
          swap_state(*sys, {fx_swapped.data(), static_cast<std::size_t>(n)});
      for (int c = 0; c < n; ++c)
        CHECK(fy[c] == doctest::Approx(fy_expect[c]).epsilon(1e-13));
    }
  }
}

TEST_CASE("primitive <-> conservative round trip") {
  Rng rng(13);
  for (const auto& sys : test::all_systems()) {
    const int n = sys->n_eq();
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, kMaxComp> q{}, prim{}, back{};
      test::random_state(rng, *sys, {q.data(), static_cast<std::size_t>(n)});
      sys->cons_to_prim({q.data(), static_cast<std::size_t>(n)}, prim);
      sys->prim_to_cons({prim.data(), static_cast<std::size_t>(n)}, back);
      for (int c = 0; c < n; ++c)
        CHECK(std::abs(back[c] - q[c]) <=
              1e-14 * std::max(1.0, std::abs(q[c])));
    }
  }
}

TEST_CASE("inadmissible states are rejected with domain_error") {
  auto eu = make_euler();
  std::array<double, 4> neg_rho{-1.0, 0.0, 0.0, 2.5};
  CHECK_THROWS_AS(eu->require_admissible(neg_rho), std::domain_error);
  std::array<double, 4> neg_p{1.0, 0.0, 0.0, -1.0};
  CHECK_THROWS_AS(eu->require_admissible(neg_p), std::domain_error);
  std::array<double, 4> nan_state{1.0, std::nan(""), 0.0, 2.5};
  CHECK_THROWS_AS(eu->require_admissible(nan_state), std::domain_error);
  std::array<double, 4> ok{1.0, 0.1, -0.1, 2.5};
  CHECK_NOTHROW(eu->require_admissible(ok));

  auto sw = make_shallow_water();
  std::array<double, 3> dry{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(sw->require_admissible(dry), std::domain_error);
  std::array<double, 3> wet{0.3, 0.1, 0.0};
  CHECK_NOTHROW(sw->require_admissible(wet));

  auto ac = make_acoustics();
  std::array<double, 3> any{-5.0, 7.0, -0.01};  // linear: any finite state
  CHECK_NOTHROW(ac->require_admissible(any));
  std::array<double, 3> inf_state{1.0, std::numeric_limits<double>::infinity(),
                                  0.0};
  CHECK_THROWS_AS(ac->require_admissible(inf_state), std::domain_error);
}

TEST_CASE("velocity extraction and component names") {
  auto eu = make_euler();
  std::array<double, 4> prim{2.0, 0.5, -0.3, 1.5}, q{};
  eu->prim_to_cons(prim, q);
  double u = 0, v = 0;
  eu->velocity(q, u, v);
  CHECK(u == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(eu->sound_speed(q) ==
        doctest::Approx(std::sqrt(1.4 * 1.5 / 2.0)).epsilon(1e-13));

  CHECK(make_acoustics()->n_eq() == 3);
  CHECK(make_euler()->n_eq() == 4);
  CHECK(make_shallow_water()->n_eq() == 3);
  CHECK(make_acoustics()->comp_names() ==
        std::vector<std::string>{"u", "v", "p"});
  CHECK(make_euler()->comp_names() ==
        std::vector<std::string>{"rho", "rhou", "rhov", "rhoE"});
  CHECK(make_shallow_water()->comp_names() ==
        std::vector<std::string>{"h", "hu", "hv"});

  CHECK(make_system(SystemId::euler)->id() == SystemId::euler);
  CHECK(make_system(SystemId::acoustics)->id() == SystemId::acoustics);
  CHECK(make_system(SystemId::shallow_water)->id() ==
        SystemId::shallow_water);
}
