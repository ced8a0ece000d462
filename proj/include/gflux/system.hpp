#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gflux {

enum class SystemId { acoustics, euler, shallow_water };

enum class Axis { x, y };

// Maximum number of conservative components across supported systems.
inline constexpr int kMaxComp = 4;

inline constexpr double kDefaultGamma = 1.4;     // Euler ideal-gas ratio
inline constexpr double kDefaultGravity = 9.812; // shallow-water gravity

// A hyperbolic system q_t + f(q)_x + g(q)_y = s in conservative variables.
// All state spans hold n_eq() entries; Jacobians are row-major n_eq x n_eq.
// Inadmissible states (non-positive density/pressure/depth) throw
// std::domain_error with the offending values in the message.
class System {
 public:
  virtual ~System() = default;

  virtual SystemId id() const = 0;
  virtual int n_eq() const = 0;
  virtual const std::vector<std::string>& comp_names() const = 0;

  virtual void flux(std::span<const double> q, Axis dir,
                    std::span<double> out) const = 0;
  virtual void jacobian(std::span<const double> q, Axis dir,
                        std::span<double> jac) const = 0;
  // Fastest signal speed max_dir(|u_dir|) + c; exact 1.0 for acoustics.
  virtual double max_wave_speed(std::span<const double> q) const = 0;

  // Characteristic (sound) speed and advective velocity of the state; for
  // acoustics the velocity is the state itself and the sound speed is 1,
  // which makes |velocity|/sound_speed a Mach number for every system.
  virtual double sound_speed(std::span<const double> q) const = 0;
  virtual void velocity(std::span<const double> q, double& u,
                        double& v) const = 0;

  virtual void prim_to_cons(std::span<const double> prim,
                            std::span<double> q) const = 0;
  virtual void cons_to_prim(std::span<const double> q,
                            std::span<double> prim) const = 0;

  virtual void require_admissible(std::span<const double> q) const = 0;
};

std::unique_ptr<System> make_acoustics();
std::unique_ptr<System> make_euler(double gamma = 1.4);
std::unique_ptr<System> make_shallow_water(double gravity = 9.812);
std::unique_ptr<System> make_system(SystemId id);

// y = J * x for a row-major n x n matrix.
inline void matvec(int n, std::span<const double> jac, std::span<const double> x,
                   std::span<double> y) {
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += jac[r * n + c] * x[c];
    y[r] = acc;
  }
}

}  // namespace gflux
