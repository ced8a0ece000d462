#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gflux/cases.hpp"
#include "gflux/diagnostics.hpp"
#include "gflux/io.hpp"
#include "gflux/timestepping.hpp"

namespace gflux {

enum class SchemeKind { gf, fv1, fv2 };

SchemeKind scheme_from_name(const std::string& name);  // throws ConfigError
std::string scheme_name(SchemeKind s);

// Everything a run needs; string fields keep the CLI round-trippable and the
// normalized config echo human-readable.
struct RunConfig {
  std::string case_name = "acoustic_vortex";
  std::string scheme = "gf";
  int nx = 0, ny = 0;            // 0: case default
  std::vector<int> convergence;  // nonempty selects convergence mode
  double t_final = -1.0;         // <0: case default
  double cfl = 0.45;
  std::string integrator = "rk2";
  double theta = 1.3;
  double mach = 0.0;             // >0: low-Mach vortex rescale target
  double steady_tol = -1.0;      // <0: case default
  std::string out_dir;           // empty: no files written
  int threads = 1;
  int write_every = 0;           // also write fields every k steps (0: final only)
  bool large = false;            // acknowledge large-run cost
  unsigned seed = 0;             // echoed into the config hash
};

// Desk-scale guard: anything bigger needs the explicit --large acknowledgment.
inline constexpr long kLargeCellBudget = 160L * 160L;
inline constexpr double kLargeTimeBudget = 100.0;

// Throws ConfigError on unknown names, bad ranges, or a large run without
// cfg.large; returns warnings (e.g. many dirichlet sides) to print.
std::vector<std::string> validate_config(const RunConfig& cfg);

// Canonical "key=value" echo of the effective configuration (sorted keys)
// and the FNV-1a hash of that echo, which all output files embed.
std::string normalized_config(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

struct RunResult {
  double t_end = 0.0;
  long steps = 0;
  std::string termination;
  double resid_abs = 0.0;      // ||rate||_inf at the last step
  double resid_norm = 0.0;     // time residual ||rate||_inf*dt/||q0||_inf
  double wall_seconds = 0.0;
  double conservation_drift = 0.0;
  std::vector<double> totals_initial, totals_final;
  std::optional<ErrorNorms> errors;  // vs exact solution, when one exists
  double achieved_mach = 0.0;        // Euler runs
  double scaled_momentum_error = 0.0;  // vortex runs with exact momenta
  double max_velocity_initial = 0.0, max_velocity_final = 0.0;
  std::vector<std::pair<double, double>> energy_history;  // acoustics (t, E)
  std::uint64_t prepert_hash = 0;  // state hash right before a perturbation
  std::uint64_t final_hash = 0;
  Field q;  // final state
};

// Runs one case end to end (including any perturbation protocol) and, when
// cfg.out_dir is set, writes field.csv, summary.json and config.ini.
RunResult run_single(const RunConfig& cfg);

// Nested-mesh convergence study (requires an exact solution); writes
// convergence.csv / convergence.json when cfg.out_dir is set.
ConvergenceReport run_convergence(const RunConfig& cfg);

}  // namespace gflux
