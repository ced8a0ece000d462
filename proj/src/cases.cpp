#include "gflux/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gflux/errors.hpp"

namespace gflux {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_coord(double x, double lo, double hi) {
  const double len = hi - lo;
  double r = std::fmod(x - lo, len);
  if (r < 0.0) r += len;
  return lo + r;
}

void euler_cons(double gamma, double rho, double u, double v, double p,
                std::span<double> q) {
  q[0] = rho;
  q[1] = rho * u;
  q[2] = rho * v;
  q[3] = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v);
}

void swe_cons(double h, double u, double v, std::span<double> q) {
  q[0] = h;
  q[1] = h * u;
  q[2] = h * v;
}

// Compactly supported rotational profile of the stationary acoustic vortex;
// the amplitude pins the peak flow speed near 0.27 so the vortex stays well
// inside the acoustic regime.
double acoustic_profile(double rho_s) {
  if (rho_s >= 1.0) return 0.0;
  const double amp = 12.0 * std::sqrt(0.981) /
                     (0.45 * std::sqrt(315.0 * kPi * kPi - 2048.0));
  const double c = 1.0 + std::cos(kPi * rho_s);
  return amp * c * c;
}

// Shear-layer profile: -1 inside the strip |y| < 1/4, +1 outside, with
// half-cosine transitions of width omega centered on y = -1/4 and y = 1/4.
double kh_shape(double y, double omega) {
  const double w2 = 0.5 * omega;
  if (y >= -0.25 - w2 && y < -0.25 + w2)
    return -std::sin(kPi / omega * (y + 0.25));
  if (y >= -0.25 + w2 && y < 0.25 - w2) return -1.0;
  if (y >= 0.25 - w2 && y < 0.25 + w2)
    return std::sin(kPi / omega * (y - 0.25));
  return 1.0;
}

}  // namespace

std::shared_ptr<System> CaseSpec::make_system() const {
  switch (id) {
    case CaseId::acoustic_vortex:
      return make_acoustics();
    case CaseId::euler_vortex:
    case CaseId::euler_vortex_perturbed:
    case CaseId::sod_circular:
    case CaseId::kelvin_helmholtz:
      return make_euler(kDefaultGamma);
    case CaseId::swe_potential_flow:
    case CaseId::swe_lake_at_rest:
    case CaseId::swe_supercritical:
      return make_shallow_water(kDefaultGravity);
  }
  throw std::logic_error("CaseSpec::make_system: unknown case id");
}

Grid CaseSpec::make_grid(int nx, int ny) const {
  if (nx <= 0) nx = default_nx;
  if (ny <= 0) ny = default_ny;
  return build_grid(nx, ny, {x0, x1, y0, y1}, 2);
}

BoundarySpec CaseSpec::make_bc() const {
  const CaseSpec self = *this;  // captured by value in dirichlet closures
  const StateFn inflow = [self](double x, double y, std::span<double> q) {
    self.initial_at(x, y, q);
  };
  switch (id) {
    case CaseId::acoustic_vortex:
    case CaseId::euler_vortex:
    case CaseId::euler_vortex_perturbed:
    case CaseId::kelvin_helmholtz:
    case CaseId::swe_lake_at_rest:
      return periodic_bc();
    case CaseId::sod_circular:
      return transmissive_bc();
    case CaseId::swe_potential_flow:
      return dirichlet_bc(inflow);
    case CaseId::swe_supercritical: {
      BoundarySpec bc;
      bc.west = {BcKind::dirichlet, inflow};
      bc.east = {BcKind::transmissive, {}};
      if (qy0 == 0.0) {
        bc.south = {BcKind::periodic, {}};
        bc.north = {BcKind::periodic, {}};
      } else {
        bc.south = {BcKind::dirichlet, inflow};
        bc.north = {BcKind::transmissive, {}};
      }
      return bc;
    }
  }
  throw std::logic_error("CaseSpec::make_bc: unknown case id");
}

bool CaseSpec::has_bathymetry() const {
  switch (id) {
    case CaseId::swe_potential_flow:
    case CaseId::swe_lake_at_rest:
    case CaseId::swe_supercritical:
      return true;
    default:
      return false;
  }
}

double CaseSpec::bathymetry_at(double x, double y) const {
  switch (id) {
    case CaseId::swe_potential_flow:
      return (30.0 - 0.5 * (x * x + y * y)) / kDefaultGravity - x * y - pf_c;
    case CaseId::swe_lake_at_rest:
      return 0.1 * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y);
    case CaseId::swe_supercritical: {
      const double r = std::hypot(x - 10.0, y - 4.0);
      return r < 2.0 ? 0.2 * (1.0 - 0.25 * r * r) : 0.0;
    }
    default:
      return 0.0;
  }
}

void CaseSpec::initial_at(double x, double y, std::span<double> cons) const {
  switch (id) {
    case CaseId::acoustic_vortex: {
      const double rx = x - 0.5, ry = y - 0.5;
      const double f = acoustic_profile(std::hypot(rx, ry) / 0.45);
      cons[0] = ry * f;
      cons[1] = -rx * f;
      cons[2] = 1.0;
      return;
    }
    case CaseId::euler_vortex:
    case CaseId::euler_vortex_perturbed: {
      const double gamma = kDefaultGamma;
      double strength = eps;
      if (mach_target > 0.0) strength = eps * mach_target / 0.7;
      const double rx = x - 5.0, ry = y - 5.0;
      const double r2 = rx * rx + ry * ry;
      const double e1 = std::exp(0.5 * (1.0 - r2));
      const double du = strength / (2.0 * kPi) * e1 * (-ry);
      const double dv = strength / (2.0 * kPi) * e1 * rx;
      const double dT = -(gamma - 1.0) * strength * strength /
                        (8.0 * gamma * kPi * kPi) * std::exp(1.0 - r2);
      const double T = 1.0 + dT;
      const double rho = std::pow(T, 1.0 / (gamma - 1.0));
      const double p = std::pow(T, gamma / (gamma - 1.0));
      euler_cons(gamma, rho, u0 + du, v0 + dv, p, cons);
      return;
    }
    case CaseId::sod_circular: {
      const double zeta =
          0.5 * std::erfc((std::hypot(x, y) - 0.5) / smooth_delta);
      const double rho = zeta * 1.0 + (1.0 - zeta) * 0.125;
      const double p = zeta * 1.0 + (1.0 - zeta) * 0.1;
      euler_cons(kDefaultGamma, rho, 0.0, 0.0, p, cons);
      return;
    }
    case CaseId::kelvin_helmholtz: {
      const double H = kh_shape(y, kh_omega);
      const double rho = kDefaultGamma + H * kh_r;
      const double u = kh_m * H;
      const double v = kh_delta * kh_m * std::sin(2.0 * kPi * x);
      euler_cons(kDefaultGamma, rho, u, v, 1.0, cons);
      return;
    }
    case CaseId::swe_potential_flow:
      swe_cons(x * y + pf_c, x, -y, cons);
      return;
    case CaseId::swe_lake_at_rest:
      swe_cons(1.0 - bathymetry_at(x, y), 0.0, 0.0, cons);
      return;
    case CaseId::swe_supercritical: {
      const double h = 2.0 - bathymetry_at(x, y);
      cons[0] = h;
      cons[1] = qx0;
      cons[2] = qy0;
      return;
    }
  }
  throw std::logic_error("CaseSpec::initial_at: unknown case id");
}

bool CaseSpec::has_exact() const {
  switch (id) {
    case CaseId::acoustic_vortex:
    case CaseId::euler_vortex:
    case CaseId::swe_potential_flow:
    case CaseId::swe_lake_at_rest:
      return true;
    default:
      return false;
  }
}

bool CaseSpec::stationary() const {
  if (!has_exact()) return false;
  if (id == CaseId::euler_vortex) return u0 == 0.0 && v0 == 0.0;
  return true;
}

void CaseSpec::exact_at(double x, double y, double t,
                        std::span<double> cons) const {
  if (!has_exact())
    throw std::logic_error("CaseSpec::exact_at: case has no exact solution");
  if (id == CaseId::euler_vortex && !stationary()) {
    initial_at(wrap_coord(x - u0 * t, x0, x1), wrap_coord(y - v0 * t, y0, y1),
               cons);
    return;
  }
  initial_at(x, y, cons);
}

CaseSpec make_case(CaseId id) {
  CaseSpec s;
  s.id = id;
  switch (id) {
    case CaseId::acoustic_vortex:
      s.name = "acoustic_vortex";
      s.x0 = 0.0; s.x1 = 1.0; s.y0 = 0.0; s.y1 = 1.0;
      s.default_t_final = 1.0;
      break;
    case CaseId::euler_vortex:
      s.name = "euler_vortex";
      s.x0 = 0.0; s.x1 = 10.0; s.y0 = 0.0; s.y1 = 10.0;
      s.default_t_final = 1.0;  // one advection period when moving
      break;
    case CaseId::euler_vortex_perturbed:
      s.name = "euler_vortex_perturbed";
      s.x0 = 0.0; s.x1 = 10.0; s.y0 = 0.0; s.y1 = 10.0;
      s.default_nx = s.default_ny = 80;
      s.perturb = true;
      s.perturb_time = 50.0;
      s.post_perturb_time = 2.0;
      s.default_t_final = s.perturb_time + s.post_perturb_time;
      s.drop_amp = 5e-3;
      s.drop_sigma = 0.8;
      s.drop_x = s.drop_y = 4.0;
      break;
    case CaseId::sod_circular:
      s.name = "sod_circular";
      s.x0 = -1.0; s.x1 = 1.0; s.y0 = -1.0; s.y1 = 1.0;
      s.default_t_final = 0.2;
      break;
    case CaseId::kelvin_helmholtz:
      s.name = "kelvin_helmholtz";
      s.x0 = 0.0; s.x1 = 2.0; s.y0 = -0.5; s.y1 = 0.5;
      s.default_nx = 64; s.default_ny = 32;
      s.default_t_final = 80.0;
      break;
    case CaseId::swe_potential_flow:
      s.name = "swe_potential_flow";
      s.x0 = -1.0; s.x1 = 1.0; s.y0 = -1.0; s.y1 = 1.0;
      s.default_t_final = 1.0;
      break;
    case CaseId::swe_lake_at_rest:
      s.name = "swe_lake_at_rest";
      s.x0 = 0.0; s.x1 = 1.0; s.y0 = 0.0; s.y1 = 1.0;
      s.default_t_final = 0.1;
      break;
    case CaseId::swe_supercritical:
      s.name = "swe_supercritical";
      s.x0 = 0.0; s.x1 = 25.0; s.y0 = 0.0; s.y1 = 8.0;
      s.default_nx = 150; s.default_ny = 50;
      s.default_t_final = 100.0;  // upper bound; runs stop on steady_tol
      s.steady_tol = 1e-13;
      break;
  }
  return s;
}

CaseSpec make_case(const std::string& name) {
  if (name == "euler_vortex_moving") {
    CaseSpec s = make_case(CaseId::euler_vortex);
    s.name = name;
    s.u0 = s.v0 = 1.0;
    s.default_t_final = 10.0;
    return s;
  }
  if (name == "swe_supercritical_crooked") {
    CaseSpec s = make_case(CaseId::swe_supercritical);
    s.name = name;
    s.qy0 = 4.0 * kPi;
    return s;
  }
  if (name == "swe_supercritical_perturbed") {
    CaseSpec s = make_case(CaseId::swe_supercritical);
    s.name = name;
    s.perturb = true;
    s.perturb_time = -1.0;  // drop once the flow is steady
    s.post_perturb_time = 0.4;
    s.drop_amp = 1e-4;
    s.drop_sigma = 0.8;
    s.drop_x = 16.0;
    s.drop_y = 3.0;
    return s;
  }
  for (CaseId id :
       {CaseId::acoustic_vortex, CaseId::euler_vortex,
        CaseId::euler_vortex_perturbed, CaseId::sod_circular,
        CaseId::kelvin_helmholtz, CaseId::swe_potential_flow,
        CaseId::swe_lake_at_rest, CaseId::swe_supercritical}) {
    CaseSpec s = make_case(id);
    if (s.name == name) return s;
  }
  throw ConfigError("unknown case '" + name + "'");
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {
      "acoustic_vortex",      "euler_vortex",
      "euler_vortex_moving",  "euler_vortex_perturbed",
      "sod_circular",         "kelvin_helmholtz",
      "swe_potential_flow",   "swe_lake_at_rest",
      "swe_supercritical",    "swe_supercritical_crooked",
      "swe_supercritical_perturbed"};
  return names;
}

CaseSetup init_case(const CaseSpec& spec, const Grid& grid, int ghost) {
  auto sys = spec.make_system();
  CaseSetup setup{Field(grid.nx(), grid.ny(), ghost, sys->n_eq()), std::nullopt,
                  spec.make_bc()};
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      spec.initial_at(grid.xc(i), grid.yc(j), setup.q.cell(i, j));
  if (spec.has_bathymetry()) {
    Field b(grid.nx(), grid.ny(), ghost, 1);
    for (int j = -ghost; j < grid.ny() + ghost; ++j)
      for (int i = -ghost; i < grid.nx() + ghost; ++i)
        b(i, j, 0) = spec.bathymetry_at(grid.xc(i), grid.yc(j));
    setup.bathymetry = std::move(b);
  }
  return setup;
}

std::optional<Field> exact_solution(const CaseSpec& spec, const Grid& grid,
                                    double t, int ghost) {
  if (!spec.has_exact()) return std::nullopt;
  auto sys = spec.make_system();
  Field q(grid.nx(), grid.ny(), ghost, sys->n_eq());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      spec.exact_at(grid.xc(i), grid.yc(j), t, q.cell(i, j));
  return q;
}

void apply_case_perturbation(const CaseSpec& spec, const Grid& grid, Field& q) {
  if (spec.drop_amp <= 0.0)
    throw ConfigError("case '" + spec.name + "' has no perturbation defined");
  const double inv_s2 = 1.0 / (spec.drop_sigma * spec.drop_sigma);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const double dx = grid.xc(i) - spec.drop_x;
      const double dy = grid.yc(j) - spec.drop_y;
      q(i, j, 0) += spec.drop_amp * std::exp(-(dx * dx + dy * dy) * inv_s2);
    }
}

double max_mach(const System& sys, const Grid& grid, const Field& q) {
  double mach = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      double u, v;
      sys.velocity(q.cell(i, j), u, v);
      mach = std::max(mach, std::hypot(u, v) / sys.sound_speed(q.cell(i, j)));
    }
  return mach;
}

}  // namespace gflux
