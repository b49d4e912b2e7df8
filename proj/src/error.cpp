#include "klein4/error.hpp"

namespace klein4 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::NotLatticeVector: return "NotLatticeVector";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::UnsupportedA: return "UnsupportedA";
    case ErrorCode::NonRectangularLattice: return "NonRectangularLattice";
    case ErrorCode::HasFixpoints: return "HasFixpoints";
    case ErrorCode::InvalidInvolution: return "InvalidInvolution";
    case ErrorCode::AbelViolation: return "AbelViolation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::PoleOutsideDomain: return "PoleOutsideDomain";
    case ErrorCode::DegenerateChoice: return "DegenerateChoice";
    case ErrorCode::ContourThroughSingularity: return "ContourThroughSingularity";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NotNearInteger: return "NotNearInteger";
    case ErrorCode::CenterTooClose: return "CenterTooClose";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return 10;
    case ErrorCode::SeriesNotConverged: return 20;
    case ErrorCode::NotLatticeVector: return 21;
    case ErrorCode::DegenerateLattice:
    case ErrorCode::UnsupportedA:
    case ErrorCode::NonRectangularLattice:
    case ErrorCode::HasFixpoints:
    case ErrorCode::InvalidInvolution: return 22;
    case ErrorCode::AbelViolation:
    case ErrorCode::DegreeMismatch: return 23;
    case ErrorCode::ParityViolation:
    case ErrorCode::PoleOutsideDomain: return 24;
    case ErrorCode::DegenerateChoice: return 25;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotOrthogonal:
    case ErrorCode::ZeroForm: return 26;
    case ErrorCode::ContourThroughSingularity: return 31;
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::DegenerateMetric: return 32;
    case ErrorCode::QuadratureNotConverged: return 33;
    case ErrorCode::NotNearInteger: return 34;
    case ErrorCode::CenterTooClose: return 35;
    case ErrorCode::IoError: return 40;
  }
  return 1;
}

}  // namespace klein4
