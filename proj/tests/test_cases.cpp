// Experiment catalogue: closed-form initial/exact data, bathymetry, boundary
// wiring, default meshes, variants, the mid-run perturbation, and a
// finite-difference steadiness oracle for every stationary case.

#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gflux/cases.hpp"
#include "gflux/errors.hpp"
#include "test_util.hpp"

using namespace gflux;

namespace {

std::array<double, 4> at(const CaseSpec& spec, double x, double y) {
  std::array<double, 4> q{};
  spec.initial_at(x, y, std::span<double>(q.data(), spec.make_system()->n_eq()));
  return q;
}

// Central-difference residual of d_x f + d_y g - s at a point; stationary
// initial data must null it (the independent steadiness oracle).
std::array<double, 4> steadiness_residual(const CaseSpec& spec, double x,
                                          double y, double h) {
  auto sys = spec.make_system();
  const int n = sys->n_eq();
  std::array<double, 4> qa{}, fp{}, fm{}, gp{}, gm{}, res{};
  auto eval = [&](double px, double py, Axis dir, std::span<double> out) {
    spec.initial_at(px, py, std::span<double>(qa.data(), n));
    sys->flux(std::span<const double>(qa.data(), n), dir, out);
  };
  eval(x + h, y, Axis::x, std::span<double>(fp.data(), n));
  eval(x - h, y, Axis::x, std::span<double>(fm.data(), n));
  eval(x, y + h, Axis::y, std::span<double>(gp.data(), n));
  eval(x, y - h, Axis::y, std::span<double>(gm.data(), n));
  for (int c = 0; c < n; ++c)
    res[c] = (fp[c] - fm[c]) / (2 * h) + (gp[c] - gm[c]) / (2 * h);

  if (spec.has_bathymetry()) {
    spec.initial_at(x, y, std::span<double>(qa.data(), n));
    const double bx =
        (spec.bathymetry_at(x + h, y) - spec.bathymetry_at(x - h, y)) / (2 * h);
    const double by =
        (spec.bathymetry_at(x, y + h) - spec.bathymetry_at(x, y - h)) / (2 * h);
    res[1] += kDefaultGravity * qa[0] * bx;  // minus the source
    res[2] += kDefaultGravity * qa[0] * by;
  }
  return res;
}

}  // namespace

TEST_CASE("acoustic vortex: unit pressure, compact support, zero center") {
  const CaseSpec spec = make_case("acoustic_vortex");
  auto c = at(spec, 0.5, 0.5);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == doctest::Approx(1.0));
  // Outside radius 0.45 the velocity vanishes identically.
  auto o = at(spec, 0.98, 0.98);
  CHECK(o[0] == 0.0);
  CHECK(o[1] == 0.0);
  CHECK(o[2] == doctest::Approx(1.0));
  for (double x : {0.1, 0.37, 0.62, 0.9})
    CHECK(at(spec, x, 0.44)[2] == doctest::Approx(1.0).epsilon(1e-15));

  // Velocity peak of the spin profile on the default mesh.
  const Grid grid = spec.make_grid(40, 40);
  auto sys = spec.make_system();
  CaseSetup setup = init_case(spec, grid, 1);
  double peak = 0.0;
  for (int j = 0; j < 40; ++j)
    for (int i = 0; i < 40; ++i)
      peak = std::max(peak,
                      std::hypot(setup.q(i, j, 0), setup.q(i, j, 1)));
  CHECK(peak >= 0.25);
  CHECK(peak <= 0.28);
}

TEST_CASE("isentropic vortex: exact isentrope and advection velocity") {
  const CaseSpec spec = make_case("euler_vortex");
  auto sys = spec.make_system();
  for (double x : {4.0, 4.7, 5.5, 6.2})
    for (double y : {4.3, 5.0, 5.9}) {
      const auto q = at(spec, x, y);
      std::array<double, 4> prim{};
      sys->cons_to_prim(std::span<const double>(q.data(), 4),
                        std::span<double>(prim.data(), 4));
      // p = rho^gamma on the isentrope.
      CHECK(prim[3] ==
            doctest::Approx(std::pow(prim[0], 1.4)).epsilon(1e-12));
    }
  const auto c = at(spec, 5.0, 5.0);
  CHECK(c[1] / c[0] == doctest::Approx(0.0));  // u0 = 0 at the center
  CHECK(c[2] / c[0] == doctest::Approx(0.0));

  const CaseSpec moving = make_case("euler_vortex_moving");
  const auto m = at(moving, 5.0, 5.0);
  CHECK(m[1] / m[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m[2] / m[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moving.default_t_final == doctest::Approx(10.0));
}

TEST_CASE("circular shock tube: smoothed states and plateau values") {
  const CaseSpec spec = make_case("sod_circular");
  // The interface radius sits exactly between the two states.
  const auto mid = at(spec, 0.5, 0.0);
  CHECK(mid[0] == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(mid[1] == 0.0);
  CHECK(mid[2] == 0.0);
  CHECK(mid[3] == doctest::Approx(1.375).epsilon(1e-12));
  const auto in = at(spec, 0.0, 0.0);
  CHECK(in[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(in[3] == doctest::Approx(2.5).epsilon(1e-12));
  const auto out = at(spec, 1.0, 1.0);
  CHECK(out[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(out[3] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("shear layer: stratified states and continuous transitions") {
  const CaseSpec spec = make_case("kelvin_helmholtz");
  auto sys = spec.make_system();
  std::array<double, 4> expect{};
  sys->prim_to_cons(std::array<double, 4>{1.399, -0.01, 1e-3, 1.0},
                    std::span<double>(expect.data(), 4));
  const auto q = at(spec, 0.25, 0.0);
  for (int c = 0; c < 4; ++c)
    CHECK(q[c] == doctest::Approx(expect[c]).epsilon(1e-12));
  const auto o = at(spec, 1.0, 0.45);
  CHECK(o[0] == doctest::Approx(1.401).epsilon(1e-12));
  CHECK(o[1] / o[0] == doctest::Approx(0.01).epsilon(1e-12));

  // The profile is continuous across all four transition-band edges.
  const double w2 = 0.5 / 16.0;
  for (double edge : {-0.25 - w2, -0.25 + w2, 0.25 - w2, 0.25 + w2}) {
    const auto lo = at(spec, 0.7, edge - 1e-9);
    const auto hi = at(spec, 0.7, edge + 1e-9);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(hi[c] - lo[c]) <= 1e-6);
  }
  CHECK(spec.default_nx == 64);
  CHECK(spec.default_ny == 32);
  CHECK(spec.default_t_final == doctest::Approx(80.0));
}

TEST_CASE("potential flow: depth, momentum and free-surface closure") {
  const CaseSpec spec = make_case("swe_potential_flow");
  const auto c = at(spec, 0.0, 0.0);
  CHECK(c[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 0.0);
  const auto q = at(spec, 0.5, -0.5);
  CHECK(q[0] == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(q[2] == doctest::Approx(0.625).epsilon(1e-14));
  // h + b recovers the Bernoulli free surface.
  for (double x : {-0.8, -0.1, 0.4})
    for (double y : {-0.6, 0.3, 0.9}) {
      const double surf = at(spec, x, y)[0] + spec.bathymetry_at(x, y);
      CHECK(surf == doctest::Approx((30.0 - 0.5 * (x * x + y * y)) / 9.812)
                        .epsilon(1e-13));
    }
  CHECK(spec.make_bc().dirichlet_sides() == 4);
}

TEST_CASE("lake at rest: flat surface over the sine bed") {
  const CaseSpec spec = make_case("swe_lake_at_rest");
  CHECK(spec.bathymetry_at(0.25, 0.0) == doctest::Approx(0.1).epsilon(1e-14));
  for (double x : {0.05, 0.3, 0.75})
    for (double y : {0.1, 0.45, 0.8}) {
      const auto q = at(spec, x, y);
      CHECK(q[0] + spec.bathymetry_at(x, y) ==
            doctest::Approx(1.0).epsilon(1e-14));
      CHECK(q[1] == 0.0);
      CHECK(q[2] == 0.0);
    }
  CHECK(spec.make_bc().periodic_x());
  CHECK(spec.make_bc().periodic_y());
}

TEST_CASE("supercritical channel: bump, inflow momentum and boundaries") {
  const CaseSpec spec = make_case("swe_supercritical");
  CHECK(spec.bathymetry_at(10.0, 4.0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(spec.bathymetry_at(1.0, 1.0) == 0.0);
  const auto c = at(spec, 10.0, 4.0);
  CHECK(c[0] == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(c[2] == 0.0);
  CHECK(spec.default_nx == 150);
  CHECK(spec.default_ny == 50);
  CHECK(spec.steady_tol == doctest::Approx(1e-13));
  CHECK(spec.default_t_final == doctest::Approx(100.0));

  const BoundarySpec bc = spec.make_bc();
  CHECK(bc.west.kind == BcKind::dirichlet);
  CHECK(bc.east.kind == BcKind::transmissive);
  CHECK(bc.south.kind == BcKind::periodic);
  CHECK(bc.north.kind == BcKind::periodic);

  const CaseSpec crooked = make_case("swe_supercritical_crooked");
  CHECK(crooked.qy0 == doctest::Approx(4.0 * M_PI));
  const BoundarySpec cbc = crooked.make_bc();
  CHECK(cbc.west.kind == BcKind::dirichlet);
  CHECK(cbc.east.kind == BcKind::transmissive);
  CHECK(cbc.south.kind == BcKind::dirichlet);
  CHECK(cbc.north.kind == BcKind::transmissive);
}

TEST_CASE("stationary cases null the flux divergence minus source") {
  for (const char* name : {"acoustic_vortex", "euler_vortex",
                           "swe_potential_flow", "swe_lake_at_rest"}) {
    const CaseSpec spec = make_case(name);
    REQUIRE(spec.stationary());
    const double sx = spec.x1 - spec.x0, sy = spec.y1 - spec.y0;
    double scale = 1.0;
    std::vector<std::array<double, 4>> res;
    for (double fx : {0.21, 0.43, 0.58, 0.77})
      for (double fy : {0.31, 0.52, 0.69}) {
        const double x = spec.x0 + fx * sx, y = spec.y0 + fy * sy;
        res.push_back(steadiness_residual(spec, x, y, 1e-5));
        const auto q = at(spec, x, y);
        for (int c = 0; c < 4; ++c) scale = std::max(scale, std::abs(q[c]));
      }
    for (const auto& r : res)
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(r[c]) <= 1e-6 * scale);
  }
  CHECK_FALSE(make_case("sod_circular").has_exact());
  CHECK_FALSE(make_case("kelvin_helmholtz").stationary());
  CHECK_FALSE(make_case("swe_supercritical").has_exact());
}

TEST_CASE("exact solutions: frozen for stationary, shifted for moving") {
  for (const char* name : {"acoustic_vortex", "euler_vortex",
                           "swe_potential_flow", "swe_lake_at_rest"}) {
    const CaseSpec spec = make_case(name);
    auto sysn = spec.make_system()->n_eq();
    for (double fx : {0.2, 0.65})
      for (double fy : {0.35, 0.8}) {
        const double x = spec.x0 + fx * (spec.x1 - spec.x0);
        const double y = spec.y0 + fy * (spec.y1 - spec.y0);
        std::array<double, 4> a{}, b{};
        spec.initial_at(x, y, std::span<double>(a.data(), sysn));
        spec.exact_at(x, y, 3.7, std::span<double>(b.data(), sysn));
        for (int c = 0; c < sysn; ++c)
          CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-14));
      }
  }

  // One domain traversal returns the advected vortex to its initial state.
  const CaseSpec moving = make_case("euler_vortex_moving");
  CHECK(moving.has_exact());
  CHECK_FALSE(moving.stationary());
  for (double x : {2.0, 5.5, 8.0})
    for (double y : {3.0, 7.0}) {
      std::array<double, 4> a{}, b{};
      moving.initial_at(x, y, std::span<double>(a.data(), 4));
      moving.exact_at(x, y, 10.0, std::span<double>(b.data(), 4));
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(a[c] - b[c]) <= 1e-10);
    }
}

TEST_CASE("mach retargeting rescales the vortex strength") {
  CaseSpec spec = make_case("euler_vortex");
  spec.mach_target = 0.01;
  const Grid grid = spec.make_grid(40, 40);
  auto sys = spec.make_system();
  const CaseSetup setup = init_case(spec, grid, 1);
  const double m = max_mach(*sys, grid, setup.q);
  CHECK(m >= 0.0095);
  CHECK(m <= 0.0105);

  CaseSpec strong = make_case("euler_vortex");
  const CaseSetup base = init_case(strong, grid, 1);
  CHECK(max_mach(*sys, grid, base.q) > 10.0 * m);
}

TEST_CASE("perturbation drops a gaussian on the leading component") {
  const CaseSpec spec = make_case("euler_vortex_perturbed");
  CHECK(spec.perturb);
  CHECK(spec.perturb_time == doctest::Approx(50.0));
  CHECK(spec.post_perturb_time == doctest::Approx(2.0));
  CHECK(spec.default_nx == 80);

  const Grid grid = spec.make_grid(10, 10);
  CaseSetup setup = init_case(spec, grid, 1);
  Field before = setup.q;
  apply_case_perturbation(spec, grid, setup.q);
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i) {
      const double dx = grid.xc(i) - spec.drop_x;
      const double dy = grid.yc(j) - spec.drop_y;
      const double expect =
          spec.drop_amp *
          std::exp(-(dx * dx + dy * dy) / (spec.drop_sigma * spec.drop_sigma));
      CHECK(setup.q(i, j, 0) - before(i, j, 0) ==
            doctest::Approx(expect).epsilon(1e-12));
      for (int c = 1; c < 4; ++c) CHECK(setup.q(i, j, c) == before(i, j, c));
    }

  const CaseSpec swp = make_case("swe_supercritical_perturbed");
  CHECK(swp.perturb);
  CHECK(swp.perturb_time < 0.0);  // waits for the steady state
  CHECK(swp.post_perturb_time == doctest::Approx(0.4));
  CHECK(swp.drop_amp == doctest::Approx(1e-4));

  const CaseSpec ac = make_case("acoustic_vortex");
  Field q(4, 4, 1, 3);
  CHECK_THROWS_AS(apply_case_perturbation(ac, build_grid(4, 4, {0, 1, 0, 1}), q),
                  ConfigError);
}

TEST_CASE("case catalogue: names, defaults and grids") {
  const auto& names = case_names();
  CHECK(names.size() == 11);
  for (const auto& n : names) CHECK(make_case(n).name == n);
  CHECK_THROWS_AS(make_case("nope"), ConfigError);

  const CaseSpec ac = make_case("acoustic_vortex");
  const Grid g = ac.make_grid();
  CHECK(g.nx() == 40);
  CHECK(g.ny() == 40);
  CHECK(g.ghost() == 2);
  CHECK(g.x0() == 0.0);
  CHECK(g.x1() == 1.0);

  const Grid kh = make_case("kelvin_helmholtz").make_grid();
  CHECK(kh.nx() == 64);
  CHECK(kh.ny() == 32);
  CHECK(kh.y0() == doctest::Approx(-0.5));

  const Grid sc = make_case("swe_supercritical").make_grid();
  CHECK(sc.nx() == 150);
  CHECK(sc.x1() == doctest::Approx(25.0));
  CHECK(sc.y1() == doctest::Approx(8.0));

  // Explicit sizes override the defaults.
  const Grid fine = ac.make_grid(128, 96);
  CHECK(fine.nx() == 128);
  CHECK(fine.ny() == 96);
}

TEST_CASE("init_case fills interior state and halo bathymetry") {
  const CaseSpec spec = make_case("swe_lake_at_rest");
  const Grid grid = spec.make_grid(8, 8);
  const CaseSetup setup = init_case(spec, grid, 2);
  CHECK(setup.q.ghost() == 2);
  REQUIRE(setup.bathymetry.has_value());
  const Field& b = *setup.bathymetry;
  for (int j = -2; j < 10; ++j)
    for (int i = -2; i < 10; ++i)
      CHECK(b(i, j, 0) ==
            doctest::Approx(spec.bathymetry_at(grid.xc(i), grid.yc(j)))
                .epsilon(1e-14));
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) {
      std::array<double, 3> expect{};
      spec.initial_at(grid.xc(i), grid.yc(j),
                      std::span<double>(expect.data(), 3));
      for (int c = 0; c < 3; ++c) CHECK(setup.q(i, j, c) == expect[c]);
    }
  CHECK_FALSE(init_case(make_case("euler_vortex"), grid, 1)
                  .bathymetry.has_value());
}
