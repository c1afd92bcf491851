#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svo {

enum class ErrorKind {
  DimensionMismatch,
  AsymmetryExceedsTolerance,
  NotWellPosedAtZero,
  NotWellPosed,
  NearCutoff,
  SingularSystem,
  SingularAtTheta,
  BoundaryTheta,
  InvalidCoordinate,
  SingularCoreFactor,
  DefectiveCore,
  NearBlowup,
  PreconditionFailed,
  ShapeMismatch,
  ControlCostNotPD,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// callers (the blow-up sweeps, the CLI) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace svo
