#include "symred/errors.hpp"

namespace symred {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::NoRealization: return "NoRealization";
    case ErrorKind::NotSubalgebra: return "NotSubalgebra";
    case ErrorKind::NonReductiveStabilizer: return "NonReductiveStabilizer";
    case ErrorKind::AssumptionTwoFailure: return "AssumptionTwoFailure";
    case ErrorKind::PointOffConstraint: return "PointOffConstraint";
    case ErrorKind::SingularOmega: return "SingularOmega";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::SingularProjection: return "SingularProjection";
    case ErrorKind::ZeroDimensionalBase: return "ZeroDimensionalBase";
    case ErrorKind::RankLoss: return "RankLoss";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidAlgebra:
    case ErrorKind::NoRealization:
    case ErrorKind::NotSubalgebra:
      return 2;
    case ErrorKind::NonReductiveStabilizer:
    case ErrorKind::AssumptionTwoFailure:
    case ErrorKind::PointOffConstraint:
      return 3;
    default:
      return 4;
  }
}

}  // namespace symred
