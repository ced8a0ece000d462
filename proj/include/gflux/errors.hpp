#pragma once

#include <stdexcept>
#include <string>

namespace gflux {

// Invalid user-facing configuration (bad flags, inconsistent case/scheme
// combinations, malformed config files).  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during a run (inadmissible state, non-finite wave speed).
// Carries the offending location in the message.  CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gflux
