#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace klein4 {

enum class ErrorCode {
  // elliptic-core
  SeriesNotConverged,
  NotLatticeVector,
  // lattice-involution
  DegenerateLattice,
  UnsupportedA,
  NonRectangularLattice,
  HasFixpoints,
  InvalidInvolution,
  // divisor-functions
  AbelViolation,
  DegreeMismatch,
  ParityViolation,
  PoleOutsideDomain,
  DegenerateChoice,
  ContourThroughSingularity,
  // geometry
  NumericalBreakdown,
  DegenerateMetric,
  // invariants
  QuadratureNotConverged,
  NotNearInteger,
  CenterTooClose,
  // gluing-algebra
  DimensionMismatch,
  NotOrthogonal,
  ZeroForm,
  // plumbing
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exit-code band for a failure: 10-19 config, 20-29 construction,
/// 30-39 verification, 40-49 IO.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace klein4
