#include "gflux/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "gflux/errors.hpp"

namespace gflux {
namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::uint64_t fnv1a_bytes(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw ConfigError("cannot create output directory '" + dir.string() +
                      "': " + ec.message());
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  auto out = open_for_write(path);
  out << content;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const Field& q, const std::vector<std::string>& comp_names,
                     std::uint64_t config_hash) {
  auto out = open_for_write(path);
  out << "# config_hash=" << hex64(config_hash) << "\n";
  out << "x,y";
  for (const auto& name : comp_names) out << ',' << name;
  out << "\n";
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      out << format_g17(grid.xc(i)) << ',' << format_g17(grid.yc(j));
      for (int c = 0; c < q.ncomp(); ++c) out << ',' << format_g17(q(i, j, c));
      out << "\n";
    }
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void compute_orders(ConvergenceReport& report) {
  report.orders.clear();
  for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
    const auto& coarse = report.levels[k];
    const auto& fine = report.levels[k + 1];
    const double ratio = static_cast<double>(fine.nx) / coarse.nx;
    std::vector<double> row(coarse.l2.size(),
                            std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < coarse.l2.size(); ++c)
      if (coarse.l2[c] > 0.0 && fine.l2[c] > 0.0)
        row[c] = std::log(coarse.l2[c] / fine.l2[c]) / std::log(ratio);
    report.orders.push_back(std::move(row));
  }
}

void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceReport& report,
                           std::uint64_t config_hash) {
  auto out = open_for_write(path);
  out << "# config_hash=" << hex64(config_hash) << "\n";
  out << "n";
  for (const auto& name : report.comp_names)
    out << ",l2_" << name << ",order_" << name;
  out << "\n";
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    const auto& lvl = report.levels[k];
    out << lvl.nx;
    for (std::size_t c = 0; c < lvl.l2.size(); ++c) {
      out << ',' << format_g17(lvl.l2[c]) << ',';
      if (k > 0 && std::isfinite(report.orders[k - 1][c]))
        out << format_g17(report.orders[k - 1][c]);
    }
    out << "\n";
  }
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace gflux
