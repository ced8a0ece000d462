#include "gflux/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gflux/errors.hpp"

namespace gflux {

double stable_dt(const Grid& grid, const System& sys, const Field& q,
                 double cfl) {
  double lam = 0.0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      double l;
      try {
        l = sys.max_wave_speed(q.cell(i, j));
      } catch (const std::domain_error& e) {
        throw SolverError(std::string(e.what()) + " at cell (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (!std::isfinite(l))
        throw SolverError("stable_dt: non-finite wave speed at cell (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      lam = std::max(lam, l);
    }
  }
  if (!(lam > 0.0)) throw SolverError("stable_dt: zero maximum wave speed");
  return cfl * std::min(grid.dx(), grid.dy()) / lam;
}

void step_euler(Field& q, double dt, const RateFn& rate_fn, Field& work) {
  rate_fn(q, work);
  auto qd = q.raw();
  auto rd = work.raw();
  for (std::size_t k = 0; k < qd.size(); ++k) qd[k] += dt * rd[k];
}

void step_rk2(Field& q, double dt, const RateFn& rate_fn, Field& work_rate,
              Field& work_stage) {
  rate_fn(q, work_rate);
  auto qd = q.raw();
  auto rd = work_rate.raw();
  auto sd = work_stage.raw();
  for (std::size_t k = 0; k < qd.size(); ++k) sd[k] = qd[k] + dt * rd[k];
  rate_fn(work_stage, work_rate);
  for (std::size_t k = 0; k < qd.size(); ++k)
    qd[k] = 0.5 * (qd[k] + sd[k] + dt * rd[k]);
}

double rate_linf(const Field& rate) {
  double m = 0.0;
  for (int j = 0; j < rate.ny(); ++j)
    for (int i = 0; i < rate.nx(); ++i)
      for (int c = 0; c < rate.ncomp(); ++c)
        m = std::max(m, std::abs(rate(i, j, c)));
  return m;
}

double steady_residual(const Field& rate, double dt, double q_ref) {
  double abs = rate_linf(rate) * dt;
  return q_ref > 0.0 ? abs / q_ref : abs;
}

AdvanceResult advance(const Grid& grid, const System& sys,
                      const RateFn& rate_fn, Field& q, const TimeConfig& tc,
                      const StepObserver& observer) {
  if (!(tc.cfl > 0.0) || tc.cfl > 1.0)
    throw ConfigError("advance: cfl must be in (0, 1]");
  if (tc.t_final < 0.0) throw ConfigError("advance: t_final must be >= 0");

  AdvanceResult res;
  res.resid_ref = rate_linf(q);  // initial-field L_inf sets the scale
  Field rate(q.nx(), q.ny(), q.ghost(), q.ncomp());
  Field stage(q.nx(), q.ny(), q.ghost(), q.ncomp());
  Field rate2(q.nx(), q.ny(), q.ghost(), q.ncomp());

  while (res.t < tc.t_final) {
    if (res.steps >= tc.max_steps) {
      res.termination = "max_steps";
      return res;
    }
    double dt = tc.fixed_dt ? *tc.fixed_dt : stable_dt(grid, sys, q, tc.cfl);
    if (res.t + dt > tc.t_final) dt = tc.t_final - res.t;

    // Stage-1 rate doubles as the steady-residual probe.
    rate_fn(q, rate);
    res.resid_abs = rate_linf(rate);
    res.resid_norm = steady_residual(rate, dt, res.resid_ref);
    if (tc.steady_tol > 0.0 && res.resid_norm <= tc.steady_tol) {
      res.termination = "steady";
      return res;
    }

    auto qd = q.raw();
    auto rd = rate.raw();
    auto sd = stage.raw();
    if (tc.integrator == Integrator::euler) {
      for (std::size_t k = 0; k < qd.size(); ++k) qd[k] += dt * rd[k];
    } else {
      for (std::size_t k = 0; k < qd.size(); ++k) sd[k] = qd[k] + dt * rd[k];
      rate_fn(stage, rate2);
      auto r2 = rate2.raw();
      for (std::size_t k = 0; k < qd.size(); ++k)
        qd[k] = 0.5 * (qd[k] + sd[k] + dt * r2[k]);
    }
    res.t += dt;
    ++res.steps;
    if (observer) observer(res.steps, res.t, dt, q, rate);
  }
  res.termination = "t_final";
  return res;
}

}  // namespace gflux
