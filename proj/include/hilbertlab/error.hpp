#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbertlab {

enum class ErrorKind {
  InvalidInput,
  NonCollinear,
  DegenerateConfiguration,
  NoCommonChart,
  DegenerateDomain,
  NotInterior,
  OutOfRange,
  NotOnBoundary,
  EmptyAfterRestriction,
  DependentVertices,
  InteriorLeak,
  EmptyInterior,
  NotInSimplex,
  BudgetExceeded,
  NotInFace,
  CrossSegmentInBoundary,
  DegenerateHull,
  FaceIntersectionUnbounded,
  DirectSumFailure,
  InKernel,
  ToleranceNotReached,
  EmptyFamily,
  NotQuasiGeodesic,
  DegenerateInterval,
  NotHalfTriangle,
  FrameFailure,
  NonPreserving,
  NotFixingVertices,
};

/// Coarse failure class; the CLI maps these onto exit codes 2, 3 and 4.
enum class ErrorClass { Precondition, Budget, InvariantTrap };

std::string_view to_string(ErrorKind kind);
ErrorClass classify(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace hilbertlab
