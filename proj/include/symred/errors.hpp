#pragma once

#include <stdexcept>
#include <string>

namespace symred {

enum class ErrorKind {
  DimensionMismatch,
  InvalidAlgebra,
  NoRealization,
  NotSubalgebra,
  NonReductiveStabilizer,
  AssumptionTwoFailure,
  PointOffConstraint,
  SingularOmega,
  DegeneratePairing,
  SingularProjection,
  ZeroDimensionalBase,
  RankLoss,
  NotTangent,
  ConfigError,
};

const char* to_string(ErrorKind kind);

/// Process exit code associated with an error class: 2 for configuration
/// problems, 3 for violated reduction assumptions, 4 for numerical failures.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symred
