#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spingap {

/// Precondition or argument violation (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure of a numerical routine (maps to CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver failure; carries the backend info code and failed indices.
class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, int info, std::vector<int> failed = {})
      : NumericalError(what), info_(info), failed_(std::move(failed)) {}
  int info() const noexcept { return info_; }
  const std::vector<int>& failed_indices() const noexcept { return failed_; }

 private:
  int info_;
  std::vector<int> failed_;
};

/// Raised when a kinetic operator would be assembled with negative inverse
/// mass somewhere on the interior grid; carries the crossing locations.
class NegativeMassError : public NumericalError {
 public:
  NegativeMassError(const std::string& what, std::vector<double> crossings)
      : NumericalError(what), crossings_(std::move(crossings)) {}
  const std::vector<double>& crossings() const noexcept { return crossings_; }

 private:
  std::vector<double> crossings_;
};

}  // namespace spingap
