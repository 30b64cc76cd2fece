// errors.hpp — exception types mapped to CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Invalid run configuration or malformed config file (exit code 2).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Model parameters outside the exactly solvable manifold where a sector
// decomposition was requested (exit code 3).
struct non_solvable_error : std::invalid_argument {
  explicit non_solvable_error(const std::string& what) : std::invalid_argument(what) {}
};

// Eigensolver failure or violated numerical postcondition (exit code 4).
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// A cross-validation check evaluated and failed (exit code 5).
struct check_failure : std::runtime_error {
  explicit check_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zeno
