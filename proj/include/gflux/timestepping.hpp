#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "gflux/field.hpp"
#include "gflux/grid.hpp"
#include "gflux/system.hpp"

namespace gflux {

enum class Integrator { euler, rk2 };

struct TimeConfig {
  Integrator integrator = Integrator::rk2;
  double cfl = 0.45;
  double t_final = 0.0;
  long max_steps = 50'000'000;
  // Steady termination on the time residual ||rate||_inf * dt / ||q(0)||_inf
  // <= steady_tol; 0 disables.
  double steady_tol = 0.0;
  std::optional<double> fixed_dt;  // overrides the CFL choice when set
};

// Semi-discrete rate evaluation; may fill the ghosts of q.
using RateFn = std::function<void(Field& q, Field& rate)>;

// dt = cfl * min(dx, dy) / max_cells lambda_max.  Throws SolverError on a
// non-finite or non-positive wave speed, with the offending cell.
double stable_dt(const Grid& grid, const System& sys, const Field& q,
                 double cfl);

// q <- q + dt L(q).
void step_euler(Field& q, double dt, const RateFn& rate_fn, Field& work);

// Heun: q* = q + dt L(q); q <- (q + q* + dt L(q*)) / 2.
void step_rk2(Field& q, double dt, const RateFn& rate_fn, Field& work_rate,
              Field& work_stage);

struct AdvanceResult {
  double t = 0.0;
  long steps = 0;
  std::string termination;       // "t_final" | "steady" | "max_steps"
  double resid_ref = 0.0;        // ||q||_inf of the initial field
  double resid_abs = 0.0;        // last ||rate||_inf
  double resid_norm = 0.0;       // last time residual ||rate||_inf*dt/resid_ref
};

// Per-step observer: called after each accepted step with the rate evaluated
// at the *beginning* of that step.
using StepObserver =
    std::function<void(long step, double t, double dt, const Field& q,
                       const Field& rate)>;

// Advances q to tc.t_final (the last step is clipped to land exactly),
// terminating early on steady_tol or max_steps; reports which happened.
AdvanceResult advance(const Grid& grid, const System& sys,
                      const RateFn& rate_fn, Field& q, const TimeConfig& tc,
                      const StepObserver& observer = nullptr);

// L_inf norm of a rate field over interior cells and components.
double rate_linf(const Field& rate);

// Dimensionless time residual ||rate||_inf * dt / q_ref: the relative change
// the next step of size dt would make, measured against the initial-field
// L_inf scale q_ref.  Falls back to ||rate||_inf * dt when q_ref is zero.
double steady_residual(const Field& rate, double dt, double q_ref);

}  // namespace gflux
