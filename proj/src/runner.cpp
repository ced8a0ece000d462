#include "gflux/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gflux/errors.hpp"
#include "gflux/fv_scheme.hpp"
#include "gflux/gf_scheme.hpp"

namespace gflux {
namespace {

using nlohmann::json;

Integrator integrator_from_name(const std::string& name) {
  if (name == "euler") return Integrator::euler;
  if (name == "rk2") return Integrator::rk2;
  throw ConfigError("unknown integrator '" + name + "' (euler, rk2)");
}

std::string format_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Effective mesh and horizon after per-case defaults are applied.
struct Effective {
  CaseSpec spec;
  int nx, ny;
  double t_final;
  double steady_tol;
};

Effective resolve(const RunConfig& cfg) {
  Effective e{make_case(cfg.case_name), 0, 0, 0.0, 0.0};
  if (cfg.mach > 0.0) e.spec.mach_target = cfg.mach;
  e.nx = cfg.nx > 0 ? cfg.nx : e.spec.default_nx;
  e.ny = cfg.ny > 0 ? cfg.ny : e.spec.default_ny;
  e.t_final = cfg.t_final >= 0.0 ? cfg.t_final : e.spec.default_t_final;
  e.steady_tol = cfg.steady_tol >= 0.0 ? cfg.steady_tol : e.spec.steady_tol;
  return e;
}

void check_budget(long nx, long ny, double t_final, bool large) {
  if (large) return;
  if (nx * ny > kLargeCellBudget)
    throw ConfigError("mesh " + std::to_string(nx) + "x" + std::to_string(ny) +
                      " exceeds the desk-scale budget (" +
                      std::to_string(kLargeCellBudget) +
                      " cells); pass --large to run it anyway");
  if (t_final > kLargeTimeBudget)
    throw ConfigError("t_final " + format_num(t_final) +
                      " exceeds the desk-scale budget (" +
                      format_num(kLargeTimeBudget) +
                      "); pass --large to run it anyway");
}

std::vector<std::pair<std::string, std::string>> config_pairs(
    const RunConfig& cfg) {
  const Effective e = resolve(cfg);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("case", cfg.case_name);
  kv.emplace_back("cfl", format_num(cfg.cfl));
  if (!cfg.convergence.empty()) {
    std::string list;
    for (std::size_t k = 0; k < cfg.convergence.size(); ++k)
      list += (k ? "," : "") + std::to_string(cfg.convergence[k]);
    kv.emplace_back("convergence", list);
  }
  kv.emplace_back("integrator", cfg.integrator);
  kv.emplace_back("large", cfg.large ? "true" : "false");
  if (cfg.mach > 0.0) kv.emplace_back("mach", format_num(cfg.mach));
  if (cfg.convergence.empty()) {
    kv.emplace_back("nx", std::to_string(e.nx));
    kv.emplace_back("ny", std::to_string(e.ny));
  }
  if (!cfg.out_dir.empty()) kv.emplace_back("out", cfg.out_dir);
  kv.emplace_back("scheme", cfg.scheme);
  kv.emplace_back("seed", std::to_string(cfg.seed));
  kv.emplace_back("steady-tol", format_num(e.steady_tol));
  kv.emplace_back("tfinal", format_num(e.t_final));
  kv.emplace_back("theta", format_num(cfg.theta));
  kv.emplace_back("threads", std::to_string(cfg.threads));
  kv.emplace_back("write-every", std::to_string(cfg.write_every));
  return kv;
}

json errors_to_json(const ErrorNorms& err,
                    const std::vector<std::string>& names) {
  json l2 = json::object(), linf = json::object();
  for (std::size_t c = 0; c < names.size(); ++c) {
    l2[names[c]] = err.l2[c];
    linf[names[c]] = err.linf[c];
  }
  return json{{"l2", l2}, {"linf", linf}};
}

}  // namespace

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "gf") return SchemeKind::gf;
  if (name == "fv1") return SchemeKind::fv1;
  if (name == "fv2") return SchemeKind::fv2;
  throw ConfigError("unknown scheme '" + name + "' (gf, fv1, fv2)");
}

std::string scheme_name(SchemeKind s) {
  switch (s) {
    case SchemeKind::gf: return "gf";
    case SchemeKind::fv1: return "fv1";
    case SchemeKind::fv2: return "fv2";
  }
  return "?";
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  std::vector<std::string> warnings;
  const Effective e = resolve(cfg);  // throws on unknown case
  scheme_from_name(cfg.scheme);
  integrator_from_name(cfg.integrator);
  if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0)
    throw ConfigError("cfl must be in (0, 1]");
  if (cfg.theta < 1.0 || cfg.theta > 2.0)
    throw ConfigError("theta must be in [1, 2]");
  if (cfg.nx < 0 || cfg.ny < 0)
    throw ConfigError("nx/ny must be >= 1 (omit for the case default)");
  if (cfg.threads < 1 || cfg.threads > 512)
    throw ConfigError("threads must be in [1, 512]");
  if (cfg.write_every < 0) throw ConfigError("write-every must be >= 0");
  if (cfg.mach < 0.0) throw ConfigError("mach must be positive");
  if (cfg.mach > 0.0 && e.spec.id != CaseId::euler_vortex)
    throw ConfigError("--mach only applies to the euler_vortex case");
  if (!cfg.convergence.empty()) {
    if (cfg.nx > 0 || cfg.ny > 0)
      throw ConfigError("give either --convergence or --nx/--ny, not both");
    if (cfg.convergence.size() < 2)
      throw ConfigError("--convergence needs at least two mesh sizes");
    for (std::size_t k = 0; k < cfg.convergence.size(); ++k) {
      if (cfg.convergence[k] < 4)
        throw ConfigError("convergence meshes must have at least 4 cells");
      if (k > 0 && cfg.convergence[k] <= cfg.convergence[k - 1])
        throw ConfigError("convergence meshes must be strictly increasing");
    }
    if (!e.spec.has_exact())
      throw ConfigError("case '" + cfg.case_name +
                        "' has no exact solution; convergence mode "
                        "needs one");
    const long nmax = cfg.convergence.back();
    check_budget(nmax, nmax, e.t_final, cfg.large);
  } else {
    check_budget(e.nx, e.ny, e.t_final, cfg.large);
  }
  const BoundarySpec bc = e.spec.make_bc();
  bc.validate();
  if (bc.dirichlet_sides() > 2)
    warnings.push_back(
        "case '" + cfg.case_name + "' prescribes " +
        std::to_string(bc.dirichlet_sides()) +
        " dirichlet sides; prescribed ghosts on outflow sides can perturb "
        "discrete equilibria");
  return warnings;
}

std::string normalized_config(const RunConfig& cfg) {
  std::string echo;
  for (const auto& [k, v] : config_pairs(cfg)) echo += k + "=" + v + "\n";
  return echo;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  // The hash identifies the numerical experiment: where the files go and how
  // many workers computed them does not change the numbers.
  std::string hashed;
  for (const auto& [k, v] : config_pairs(cfg))
    if (k != "out" && k != "threads") hashed += k + "=" + v + "\n";
  return fnv1a_bytes(hashed);
}

RunResult run_single(const RunConfig& cfg) {
  for (const auto& w : validate_config(cfg))
    std::cerr << "warning: " << w << "\n";

  const Effective e = resolve(cfg);
  const CaseSpec& spec = e.spec;
  const auto sys = spec.make_system();
  const Grid grid = spec.make_grid(e.nx, e.ny);
  const SchemeKind scheme = scheme_from_name(cfg.scheme);
  const int ghost = scheme == SchemeKind::fv2 ? 2 : 1;

  CaseSetup setup = init_case(spec, grid, ghost);
  const Field* bathy = setup.bathymetry ? &*setup.bathymetry : nullptr;

  GfOptions gfo;
  FvOptions fvo;
  RateFn rate_fn;
  if (scheme == SchemeKind::gf) {
    gfo.threads = cfg.threads;
    if (bathy) {
      gfo.source_mode = SourceMode::swe_directional;
      gfo.bathymetry = bathy;
    }
    rate_fn = [&](Field& q, Field& r) {
      gf_rate(grid, *sys, q, setup.bc, gfo, r);
    };
  } else {
    fvo.order = scheme == SchemeKind::fv2 ? 2 : 1;
    fvo.theta = cfg.theta;
    fvo.bathymetry = bathy;
    fvo.threads = cfg.threads;
    rate_fn = [&](Field& q, Field& r) {
      fv_rate(grid, *sys, q, setup.bc, fvo, r);
    };
  }

  RunResult res;
  res.totals_initial = conserved_totals(grid, setup.q);
  res.max_velocity_initial = max_velocity_norm(*sys, grid, setup.q);
  if (sys->id() == SystemId::euler)
    res.achieved_mach = max_mach(*sys, grid, setup.q);

  const bool acoustics = sys->id() == SystemId::acoustics;
  if (acoustics)
    res.energy_history.emplace_back(0.0, acoustic_energy(grid, setup.q));

  const std::uint64_t cfg_hash = config_hash(cfg);
  const std::filesystem::path out_dir = cfg.out_dir;
  long step_offset = 0;
  double t_offset = 0.0;
  const StepObserver observer = [&](long step, double t, double /*dt*/,
                                    const Field& q, const Field& /*rate*/) {
    if (acoustics)
      res.energy_history.emplace_back(t_offset + t, acoustic_energy(grid, q));
    if (cfg.write_every > 0 && !cfg.out_dir.empty() &&
        (step_offset + step) % cfg.write_every == 0) {
      char name[48];
      std::snprintf(name, sizeof name, "field_%08ld.csv", step_offset + step);
      write_field_csv(out_dir / name, grid, q, sys->comp_names(), cfg_hash);
    }
  };

  TimeConfig tc;
  tc.integrator = integrator_from_name(cfg.integrator);
  tc.cfl = cfg.cfl;

  const auto wall0 = std::chrono::steady_clock::now();
  AdvanceResult adv;
  if (spec.perturb) {
    TimeConfig tc1 = tc;
    if (spec.perturb_time >= 0.0) {
      tc1.t_final = std::min(spec.perturb_time, e.t_final);
    } else {
      tc1.t_final = e.t_final;
      tc1.steady_tol = e.steady_tol > 0.0 ? e.steady_tol : 1e-13;
    }
    adv = advance(grid, *sys, rate_fn, setup.q, tc1, observer);
    step_offset += adv.steps;
    t_offset += adv.t;
    const bool reached = spec.perturb_time < 0.0 ||
                         adv.t >= spec.perturb_time * (1.0 - 1e-12);
    if (reached) {
      res.prepert_hash = field_hash(setup.q);
      apply_case_perturbation(spec, grid, setup.q);
      TimeConfig tc2 = tc;
      tc2.t_final = spec.perturb_time >= 0.0 ? e.t_final - adv.t
                                             : spec.post_perturb_time;
      if (tc2.t_final > 0.0) {
        adv = advance(grid, *sys, rate_fn, setup.q, tc2, observer);
        step_offset += adv.steps;
        t_offset += adv.t;
      }
    }
  } else {
    tc.t_final = e.t_final;
    tc.steady_tol = e.steady_tol;
    adv = advance(grid, *sys, rate_fn, setup.q, tc, observer);
    step_offset = adv.steps;
    t_offset = adv.t;
  }
  const auto wall1 = std::chrono::steady_clock::now();

  res.t_end = t_offset;
  res.steps = step_offset;
  res.termination = adv.termination;
  res.resid_abs = adv.resid_abs;
  res.resid_norm = adv.resid_norm;
  res.wall_seconds = std::chrono::duration<double>(wall1 - wall0).count();

  res.totals_final = conserved_totals(grid, setup.q);
  res.conservation_drift =
      conservation_drift(res.totals_initial, res.totals_final);
  res.max_velocity_final = max_velocity_norm(*sys, grid, setup.q);
  res.final_hash = field_hash(setup.q);

  if (spec.has_exact() && !spec.perturb) {
    const auto exact = exact_solution(spec, grid, res.t_end);
    res.errors = error_norms(grid, setup.q, *exact);
    if (sys->id() == SystemId::euler) {
      double scaled = 0.0;
      for (int c : {1, 2}) {
        double ref = 0.0;
        for (int j = 0; j < grid.ny(); ++j)
          for (int i = 0; i < grid.nx(); ++i)
            ref = std::max(ref, std::abs((*exact)(i, j, c)));
        scaled = std::max(scaled, res.errors->l2[c] / std::max(ref, 1e-300));
      }
      res.scaled_momentum_error = scaled;
    }
  }

  if (!cfg.out_dir.empty()) {
    ensure_dir(out_dir);
    write_text_file(out_dir / "config.ini", normalized_config(cfg));
    write_field_csv(out_dir / "field.csv", grid, setup.q, sys->comp_names(),
                    cfg_hash);

    json summary;
    summary["config_hash"] = hex64(cfg_hash);
    summary["case"] = cfg.case_name;
    summary["scheme"] = cfg.scheme;
    summary["nx"] = grid.nx();
    summary["ny"] = grid.ny();
    summary["t_final"] = res.t_end;
    summary["steps"] = res.steps;
    summary["termination"] = res.termination;
    summary["steady_residual"] = res.resid_norm;
    summary["rate_linf"] = res.resid_abs;
    summary["wall_seconds"] = res.wall_seconds;
    summary["conservation"] = {{"initial", res.totals_initial},
                               {"final", res.totals_final},
                               {"drift", res.conservation_drift}};
    summary["field_hash"] = hex64(res.final_hash);
    summary["max_velocity"] = {{"initial", res.max_velocity_initial},
                               {"final", res.max_velocity_final}};
    if (res.errors)
      summary["errors"] = errors_to_json(*res.errors, sys->comp_names());
    if (sys->id() == SystemId::euler) {
      summary["achieved_mach"] = res.achieved_mach;
      if (res.errors)
        summary["scaled_momentum_error"] = res.scaled_momentum_error;
    }
    if (spec.perturb) summary["prepert_field_hash"] = hex64(res.prepert_hash);
    if (acoustics) {
      const std::size_t stride =
          std::max<std::size_t>(1, res.energy_history.size() / 1000);
      json hist = json::array();
      for (std::size_t k = 0; k < res.energy_history.size(); ++k)
        if (k % stride == 0 || k + 1 == res.energy_history.size())
          hist.push_back(
              {res.energy_history[k].first, res.energy_history[k].second});
      summary["energy_history"] = hist;
    }
    write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
  }

  res.q = std::move(setup.q);
  return res;
}

ConvergenceReport run_convergence(const RunConfig& cfg) {
  if (cfg.convergence.empty())
    throw ConfigError("run_convergence: no mesh list given");
  for (const auto& w : validate_config(cfg))
    std::cerr << "warning: " << w << "\n";

  const CaseSpec spec = make_case(cfg.case_name);
  const auto sys = spec.make_system();

  ConvergenceReport report;
  report.comp_names = sys->comp_names();
  for (int n : cfg.convergence) {
    RunConfig sub = cfg;
    sub.convergence.clear();
    sub.nx = sub.ny = n;
    sub.out_dir.clear();
    sub.write_every = 0;
    const RunResult r = run_single(sub);
    report.levels.push_back({n, n, r.errors->l2, r.errors->linf});
  }
  compute_orders(report);

  if (!cfg.out_dir.empty()) {
    const std::filesystem::path out_dir = cfg.out_dir;
    ensure_dir(out_dir);
    const std::uint64_t cfg_hash = config_hash(cfg);
    write_text_file(out_dir / "config.ini", normalized_config(cfg));
    write_convergence_csv(out_dir / "convergence.csv", report, cfg_hash);

    json jr;
    jr["config_hash"] = hex64(cfg_hash);
    jr["case"] = cfg.case_name;
    jr["scheme"] = cfg.scheme;
    jr["components"] = report.comp_names;
    json levels = json::array();
    for (const auto& lvl : report.levels) {
      json l;
      l["n"] = lvl.nx;
      json l2 = json::object(), linf = json::object();
      for (std::size_t c = 0; c < report.comp_names.size(); ++c) {
        l2[report.comp_names[c]] = lvl.l2[c];
        linf[report.comp_names[c]] = lvl.linf[c];
      }
      l["l2"] = l2;
      l["linf"] = linf;
      levels.push_back(l);
    }
    jr["levels"] = levels;
    json orders = json::array();
    for (std::size_t k = 0; k < report.orders.size(); ++k) {
      json o;
      o["pair"] = std::to_string(report.levels[k].nx) + "->" +
                  std::to_string(report.levels[k + 1].nx);
      json ol2 = json::object();
      for (std::size_t c = 0; c < report.comp_names.size(); ++c)
        ol2[report.comp_names[c]] = report.orders[k][c];
      o["l2"] = ol2;
      orders.push_back(o);
    }
    jr["orders"] = orders;
    write_text_file(out_dir / "convergence.json", jr.dump(2) + "\n");
  }
  return report;
}

}  // namespace gflux
