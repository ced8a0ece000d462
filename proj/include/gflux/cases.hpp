#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gflux/boundary.hpp"
#include "gflux/field.hpp"
#include "gflux/grid.hpp"
#include "gflux/system.hpp"

namespace gflux {

enum class CaseId {
  acoustic_vortex,
  euler_vortex,
  euler_vortex_perturbed,
  sod_circular,
  kelvin_helmholtz,
  swe_potential_flow,
  swe_lake_at_rest,
  swe_supercritical,
};

// A fully-parameterized experiment: domain, defaults, boundary conditions,
// pointwise initial/exact data, and bathymetry.  Named variants of the same
// CaseId (e.g. a moving vortex, a crooked channel) differ only in the
// parameter block below; make_case() wires up the canonical configurations.
struct CaseSpec {
  CaseId id = CaseId::acoustic_vortex;
  std::string name;  // canonical CLI name of this variant

  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;  // domain bounds
  int default_nx = 40, default_ny = 40;
  double default_t_final = 1.0;
  double steady_tol = 0.0;  // >0: run-to-steady-state case

  // --- per-case parameters (meaning depends on id) ----------------------
  double u0 = 0.0, v0 = 0.0;      // vortex advection velocity
  double eps = 5.0;               // isentropic vortex strength
  double mach_target = 0.0;       // >0 rescales eps to hit this max Mach
  double drop_amp = 0.0;          // Gaussian perturbation drop: amplitude,
  double drop_sigma = 0.8;        //   width,
  double drop_x = 0.0;            //   center
  double drop_y = 0.0;
  double smooth_delta = 0.01;     // shock-tube interface smoothing width
  double kh_m = 1e-2;             // shear-layer Mach number
  double kh_r = 1e-3;             // shear-layer density contrast
  double kh_delta = 0.1;          // transverse-velocity perturbation factor
  double kh_omega = 1.0 / 16.0;   // shear-layer transition width
  double pf_c = 1.5;              // potential-flow depth constant
  double qx0 = 24.0, qy0 = 0.0;   // channel momentum components

  // --- perturbation protocol --------------------------------------------
  bool perturb = false;          // apply the Gaussian drop mid-run
  double perturb_time = -1.0;    // time at which to perturb (<0: at steady state)
  double post_perturb_time = 0.0;  // how long to continue after the drop

  std::shared_ptr<System> make_system() const;
  Grid make_grid(int nx = 0, int ny = 0) const;  // <=0 selects the default
  BoundarySpec make_bc() const;

  bool has_bathymetry() const;
  double bathymetry_at(double x, double y) const;

  // Conservative state at a point (exact_at requires has_exact()).
  void initial_at(double x, double y, std::span<double> cons) const;
  void exact_at(double x, double y, double t, std::span<double> cons) const;
  bool has_exact() const;
  bool stationary() const;  // exact solution independent of time
};

// Canonical configurations; the string overload also accepts the variant
// names listed by case_names() and throws ConfigError on unknown input.
CaseSpec make_case(CaseId id);
CaseSpec make_case(const std::string& name);
const std::vector<std::string>& case_names();

struct CaseSetup {
  Field q;                           // conservative state, interior filled
  std::optional<Field> bathymetry;   // sampled everywhere incl. ghosts
  BoundarySpec bc;
};

// Sample the initial data at cell centers (ghosts are left to the caller's
// boundary fill; the bathymetry, having a closed form, is sampled on the
// whole halo directly).
CaseSetup init_case(const CaseSpec& spec, const Grid& grid, int ghost);

// Exact solution sampled at cell centers at time t, or nullopt if the case
// has no closed-form reference.
std::optional<Field> exact_solution(const CaseSpec& spec, const Grid& grid,
                                    double t, int ghost = 0);

// Add the case's Gaussian drop (density for Euler, depth for shallow water)
// to the interior cells of q.
void apply_case_perturbation(const CaseSpec& spec, const Grid& grid, Field& q);

// Largest |velocity|/sound_speed over interior cells.
double max_mach(const System& sys, const Grid& grid, const Field& q);

}  // namespace gflux
