// Error types shared across the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace zak {

// Bad parameters, malformed sweeps, unusable grids. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A time step or a whole run failed (divergence, NaN, pivot breakdown).
// CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int step, double time)
      : std::runtime_error(what), step(step), time(time) {}
  int step = -1;
  double time = 0.0;
};

// Unwritable output path and friends. CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Contract violations are programming errors: abort, never throw.
[[noreturn]] void contract_failure(const char* what);

inline void require(bool ok, const char* what) {
  if (!ok) contract_failure(what);
}

}  // namespace zak
