#include "gflux/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gflux {
namespace {

[[noreturn]] void fail_admissible(const char* what, std::span<const double> q) {
  char buf[160];
  std::string msg = std::string("inadmissible state (") + what + "): q = [";
  for (std::size_t c = 0; c < q.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%s%.17g", c ? ", " : "", q[c]);
    msg += buf;
  }
  msg += "]";
  throw std::domain_error(msg);
}

// Swap a pair of components in place (used to derive the y-direction flux and
// Jacobian from the x-direction ones by coordinate exchange, which makes the
// rotational-symmetry property exact by construction).
void swap_comp(std::span<double> q, int a, int b) { std::swap(q[a], q[b]); }

// --------------------------------------------------------------------------
// Linear acoustics: q = (u, v, p), f = (p, 0, u), g = (0, p, v).
// --------------------------------------------------------------------------
class Acoustics final : public System {
 public:
  SystemId id() const override { return SystemId::acoustics; }
  int n_eq() const override { return 3; }
  const std::vector<std::string>& comp_names() const override {
    static const std::vector<std::string> names = {"u", "v", "p"};
    return names;
  }

  void flux(std::span<const double> q, Axis dir,
            std::span<double> out) const override {
    if (dir == Axis::x) {
      out[0] = q[2];
      out[1] = 0.0;
      out[2] = q[0];
    } else {
      out[0] = 0.0;
      out[1] = q[2];
      out[2] = q[1];
    }
  }

  void jacobian(std::span<const double> /*q*/, Axis dir,
                std::span<double> jac) const override {
    std::fill(jac.begin(), jac.begin() + 9, 0.0);
    if (dir == Axis::x) {
      jac[0 * 3 + 2] = 1.0;
      jac[2 * 3 + 0] = 1.0;
    } else {
      jac[1 * 3 + 2] = 1.0;
      jac[2 * 3 + 1] = 1.0;
    }
  }

  double max_wave_speed(std::span<const double> /*q*/) const override {
    return 1.0;
  }

  double sound_speed(std::span<const double> /*q*/) const override {
    return 1.0;
  }
  void velocity(std::span<const double> q, double& u, double& v) const override {
    u = q[0];
    v = q[1];
  }

  void prim_to_cons(std::span<const double> prim,
                    std::span<double> q) const override {
    std::copy(prim.begin(), prim.begin() + 3, q.begin());
  }
  void cons_to_prim(std::span<const double> q,
                    std::span<double> prim) const override {
    std::copy(q.begin(), q.begin() + 3, prim.begin());
  }

  void require_admissible(std::span<const double> q) const override {
    for (int c = 0; c < 3; ++c)
      if (!std::isfinite(q[c])) fail_admissible("non-finite", q);
  }
};

// --------------------------------------------------------------------------
// Compressible Euler: q = (rho, rho*u, rho*v, rho*E), ideal gas.
// --------------------------------------------------------------------------
class Euler final : public System {
 public:
  explicit Euler(double gamma) : gamma_(gamma) {}

  SystemId id() const override { return SystemId::euler; }
  int n_eq() const override { return 4; }
  const std::vector<std::string>& comp_names() const override {
    static const std::vector<std::string> names = {"rho", "rhou", "rhov", "rhoE"};
    return names;
  }

  double pressure(std::span<const double> q) const {
    return (gamma_ - 1.0) *
           (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0]);
  }

  void flux(std::span<const double> q, Axis dir,
            std::span<double> out) const override {
    require_admissible(q);
    if (dir == Axis::x) {
      flux_x(q, out);
    } else {
      double qs[4] = {q[0], q[2], q[1], q[3]};
      flux_x(std::span<const double>(qs, 4), out);
      swap_comp(out, 1, 2);
    }
  }

  void jacobian(std::span<const double> q, Axis dir,
                std::span<double> jac) const override {
    require_admissible(q);
    if (dir == Axis::x) {
      jacobian_x(q, jac);
    } else {
      double qs[4] = {q[0], q[2], q[1], q[3]};
      double js[16];
      jacobian_x(std::span<const double>(qs, 4), std::span<double>(js, 16));
      static constexpr int p[4] = {0, 2, 1, 3};  // swap momentum rows/cols
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) jac[r * 4 + c] = js[p[r] * 4 + p[c]];
    }
  }

  double max_wave_speed(std::span<const double> q) const override {
    require_admissible(q);
    double u = q[1] / q[0], v = q[2] / q[0];
    double c = std::sqrt(gamma_ * pressure(q) / q[0]);
    return std::max(std::abs(u), std::abs(v)) + c;
  }

  double sound_speed(std::span<const double> q) const override {
    require_admissible(q);
    return std::sqrt(gamma_ * pressure(q) / q[0]);
  }
  void velocity(std::span<const double> q, double& u, double& v) const override {
    u = q[1] / q[0];
    v = q[2] / q[0];
  }

  void prim_to_cons(std::span<const double> prim,
                    std::span<double> q) const override {
    double rho = prim[0], u = prim[1], v = prim[2], p = prim[3];
    if (!(rho > 0.0) || !(p > 0.0)) fail_admissible("rho,p must be > 0", prim);
    q[0] = rho;
    q[1] = rho * u;
    q[2] = rho * v;
    q[3] = p / (gamma_ - 1.0) + 0.5 * rho * (u * u + v * v);
  }

  void cons_to_prim(std::span<const double> q,
                    std::span<double> prim) const override {
    require_admissible(q);
    prim[0] = q[0];
    prim[1] = q[1] / q[0];
    prim[2] = q[2] / q[0];
    prim[3] = pressure(q);
  }

  void require_admissible(std::span<const double> q) const override {
    for (int c = 0; c < 4; ++c)
      if (!std::isfinite(q[c])) fail_admissible("non-finite", q);
    if (!(q[0] > 0.0)) fail_admissible("rho <= 0", q);
    if (!(pressure(q) > 0.0)) fail_admissible("p <= 0", q);
  }

 private:
  void flux_x(std::span<const double> q, std::span<double> out) const {
    double rho = q[0], u = q[1] / rho, v = q[2] / rho;
    double p = pressure(q);
    out[0] = q[1];
    out[1] = q[1] * u + p;
    out[2] = q[1] * v;
    out[3] = (q[3] + p) * u;
  }

  void jacobian_x(std::span<const double> q, std::span<double> jac) const {
    double rho = q[0], u = q[1] / rho, v = q[2] / rho;
    double gm1 = gamma_ - 1.0;
    double ke = 0.5 * (u * u + v * v);
    double H = (q[3] + pressure(q)) / rho;
    jac[0] = 0.0;          jac[1] = 1.0;            jac[2] = 0.0;       jac[3] = 0.0;
    jac[4] = gm1 * ke - u * u;
    jac[5] = (3.0 - gamma_) * u;
    jac[6] = -gm1 * v;
    jac[7] = gm1;
    jac[8] = -u * v;       jac[9] = v;              jac[10] = u;        jac[11] = 0.0;
    jac[12] = u * (gm1 * ke - H);
    jac[13] = H - gm1 * u * u;
    jac[14] = -gm1 * u * v;
    jac[15] = gamma_ * u;
  }

  double gamma_;
};

// --------------------------------------------------------------------------
// Shallow water: q = (h, hu, hv); bathymetry sources are handled by the
// schemes, not here.
// --------------------------------------------------------------------------
class ShallowWater final : public System {
 public:
  explicit ShallowWater(double gravity) : g_(gravity) {}

  SystemId id() const override { return SystemId::shallow_water; }
  int n_eq() const override { return 3; }
  const std::vector<std::string>& comp_names() const override {
    static const std::vector<std::string> names = {"h", "hu", "hv"};
    return names;
  }

  void flux(std::span<const double> q, Axis dir,
            std::span<double> out) const override {
    require_admissible(q);
    if (dir == Axis::x) {
      flux_x(q, out);
    } else {
      double qs[3] = {q[0], q[2], q[1]};
      flux_x(std::span<const double>(qs, 3), out);
      swap_comp(out, 1, 2);
    }
  }

  void jacobian(std::span<const double> q, Axis dir,
                std::span<double> jac) const override {
    require_admissible(q);
    if (dir == Axis::x) {
      jacobian_x(q, jac);
    } else {
      double qs[3] = {q[0], q[2], q[1]};
      double js[9];
      jacobian_x(std::span<const double>(qs, 3), std::span<double>(js, 9));
      static constexpr int p[3] = {0, 2, 1};
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) jac[r * 3 + c] = js[p[r] * 3 + p[c]];
    }
  }

  double max_wave_speed(std::span<const double> q) const override {
    require_admissible(q);
    double u = q[1] / q[0], v = q[2] / q[0];
    return std::max(std::abs(u), std::abs(v)) + std::sqrt(g_ * q[0]);
  }

  double sound_speed(std::span<const double> q) const override {
    require_admissible(q);
    return std::sqrt(g_ * q[0]);
  }
  void velocity(std::span<const double> q, double& u, double& v) const override {
    u = q[1] / q[0];
    v = q[2] / q[0];
  }

  void prim_to_cons(std::span<const double> prim,
                    std::span<double> q) const override {
    if (!(prim[0] > 0.0)) fail_admissible("h <= 0", prim);
    q[0] = prim[0];
    q[1] = prim[0] * prim[1];
    q[2] = prim[0] * prim[2];
  }

  void cons_to_prim(std::span<const double> q,
                    std::span<double> prim) const override {
    require_admissible(q);
    prim[0] = q[0];
    prim[1] = q[1] / q[0];
    prim[2] = q[2] / q[0];
  }

  void require_admissible(std::span<const double> q) const override {
    for (int c = 0; c < 3; ++c)
      if (!std::isfinite(q[c])) fail_admissible("non-finite", q);
    if (!(q[0] > 0.0)) fail_admissible("h <= 0", q);
  }

  double gravity() const { return g_; }

 private:
  void flux_x(std::span<const double> q, std::span<double> out) const {
    double h = q[0], u = q[1] / h;
    out[0] = q[1];
    out[1] = q[1] * u + 0.5 * g_ * h * h;
    out[2] = q[2] * u;
  }

  void jacobian_x(std::span<const double> q, std::span<double> jac) const {
    double h = q[0], u = q[1] / h, v = q[2] / h;
    jac[0] = 0.0;            jac[1] = 1.0;  jac[2] = 0.0;
    jac[3] = g_ * h - u * u; jac[4] = 2 * u; jac[5] = 0.0;
    jac[6] = -u * v;         jac[7] = v;    jac[8] = u;
  }

  double g_;
};

}  // namespace

std::unique_ptr<System> make_acoustics() { return std::make_unique<Acoustics>(); }
std::unique_ptr<System> make_euler(double gamma) {
  return std::make_unique<Euler>(gamma);
}
std::unique_ptr<System> make_shallow_water(double gravity) {
  return std::make_unique<ShallowWater>(gravity);
}

std::unique_ptr<System> make_system(SystemId id) {
  switch (id) {
    case SystemId::acoustics: return make_acoustics();
    case SystemId::euler: return make_euler();
    case SystemId::shallow_water: return make_shallow_water();
  }
  throw std::invalid_argument("make_system: unknown system id");
}

}  // namespace gflux
