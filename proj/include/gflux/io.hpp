#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gflux/field.hpp"
#include "gflux/grid.hpp"

namespace gflux {

std::uint64_t fnv1a_bytes(std::string_view bytes);
std::string hex64(std::uint64_t h);

void ensure_dir(const std::filesystem::path& dir);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

// Field CSV: "# config_hash=<hex>" comment line, a "x,y,<components>" header,
// then one row per cell in y-outer order with %.17g values.
void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const Field& q, const std::vector<std::string>& comp_names,
                     std::uint64_t config_hash);

// One mesh level of a convergence study.
struct ConvergenceLevel {
  int nx = 0, ny = 0;
  std::vector<double> l2, linf;  // per component
};

struct ConvergenceReport {
  std::vector<std::string> comp_names;
  std::vector<ConvergenceLevel> levels;
  // orders[k][c]: observed L2 order between levels k and k+1 for component c.
  std::vector<std::vector<double>> orders;
};

// Computes orders[k][c] = log(e_k/e_{k+1}) / log(n_{k+1}/n_k) in place.
void compute_orders(ConvergenceReport& report);

// Component-major table: n, then l2_<c>, order_<c> column pairs (order empty
// on the coarsest level), prefixed by the config-hash comment line.
void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceReport& report,
                           std::uint64_t config_hash);

}  // namespace gflux
