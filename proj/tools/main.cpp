#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gflux/errors.hpp"
#include "gflux/runner.hpp"

namespace {

std::string joined_case_names() {
  std::string all;
  for (const auto& name : gflux::case_names()) {
    if (!all.empty()) all += ", ";
    all += name;
  }
  return all;
}

void print_single(const gflux::RunConfig& cfg, const gflux::RunResult& res) {
  std::printf("case=%s scheme=%s mesh=%dx%d\n", cfg.case_name.c_str(),
              cfg.scheme.c_str(), res.q.nx(), res.q.ny());
  std::printf("t_end=%.6g steps=%ld termination=%s wall=%.3fs\n", res.t_end,
              res.steps, res.termination.c_str(), res.wall_seconds);
  std::printf("steady_residual=%.3e (rate_linf %.3e) conservation_drift=%.3e\n",
              res.resid_norm, res.resid_abs, res.conservation_drift);
  if (res.errors) {
    std::printf("errors_l2:");
    for (double e : res.errors->l2) std::printf(" %.6e", e);
    std::printf("\n");
  }
}

void print_convergence(const gflux::ConvergenceReport& report) {
  std::printf("%6s", "n");
  for (const auto& name : report.comp_names)
    std::printf(" %12s %6s", ("l2_" + name).c_str(), "order");
  std::printf("\n");
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    std::printf("%6d", report.levels[k].nx);
    for (std::size_t c = 0; c < report.comp_names.size(); ++c) {
      std::printf(" %12.4e", report.levels[k].l2[c]);
      if (k > 0)
        std::printf(" %6.2f", report.orders[k - 1][c]);
      else
        std::printf(" %6s", "--");
    }
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  gflux::RunConfig cfg;
  int n = 0;

  CLI::App app{
      "Cartesian finite-volume solver with a stationarity-preserving "
      "global-flux corner scheme (acoustics, Euler, shallow water)"};
  app.set_config("--config", "", "read options from a key=value file");
  app.allow_config_extras(false);

  app.add_option("--case", cfg.case_name,
                 "test case: " + joined_case_names())
      ->capture_default_str();
  app.add_option("--scheme", cfg.scheme, "gf | fv1 | fv2")
      ->capture_default_str();
  auto* opt_n = app.add_option("--n", n, "square mesh (nx = ny = n)");
  auto* opt_nx = app.add_option("--nx", cfg.nx, "cells in x (0: case default)");
  auto* opt_ny = app.add_option("--ny", cfg.ny, "cells in y (0: case default)");
  opt_n->excludes(opt_nx)->excludes(opt_ny);
  app.add_option("--convergence", cfg.convergence,
                 "nested square meshes for a convergence study, e.g. 20,40,80")
      ->delimiter(',');
  app.add_option("--tfinal", cfg.t_final, "final time (negative: case default)");
  app.add_option("--cfl", cfg.cfl, "CFL number in (0, 1]")
      ->capture_default_str();
  app.add_option("--integrator", cfg.integrator, "euler | rk2")
      ->capture_default_str();
  app.add_option("--theta", cfg.theta, "generalized-minmod parameter [1, 2]")
      ->capture_default_str();
  app.add_option("--mach", cfg.mach,
                 "rescale the euler_vortex to this max Mach number");
  app.add_option("--steady-tol", cfg.steady_tol,
                 "steady-state residual tolerance (negative: case default)");
  app.add_option("--out", cfg.out_dir, "output directory (omit: no files)");
  app.add_option("--threads", cfg.threads, "worker threads")
      ->capture_default_str();
  app.add_option("--write-every", cfg.write_every,
                 "also write the field every k steps");
  app.add_flag("--large", cfg.large,
               "acknowledge a run beyond the desk-scale budget");
  app.add_option("--seed", cfg.seed, "seed echoed into the config hash");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (n > 0) cfg.nx = cfg.ny = n;

  try {
    if (!cfg.convergence.empty()) {
      print_convergence(gflux::run_convergence(cfg));
    } else {
      print_single(cfg, gflux::run_single(cfg));
    }
    return 0;
  } catch (const gflux::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 3;
  }
}
