#include "hilbertlab/error.hpp"

namespace hilbertlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonCollinear: return "NonCollinear";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NoCommonChart: return "NoCommonChart";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::EmptyAfterRestriction: return "EmptyAfterRestriction";
    case ErrorKind::DependentVertices: return "DependentVertices";
    case ErrorKind::InteriorLeak: return "InteriorLeak";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::NotInSimplex: return "NotInSimplex";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotInFace: return "NotInFace";
    case ErrorKind::CrossSegmentInBoundary: return "CrossSegmentInBoundary";
    case ErrorKind::DegenerateHull: return "DegenerateHull";
    case ErrorKind::FaceIntersectionUnbounded: return "FaceIntersectionUnbounded";
    case ErrorKind::DirectSumFailure: return "DirectSumFailure";
    case ErrorKind::InKernel: return "InKernel";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotQuasiGeodesic: return "NotQuasiGeodesic";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::NotHalfTriangle: return "NotHalfTriangle";
    case ErrorKind::FrameFailure: return "FrameFailure";
    case ErrorKind::NonPreserving: return "NonPreserving";
    case ErrorKind::NotFixingVertices: return "NotFixingVertices";
  }
  return "Unknown";
}

ErrorClass classify(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::ToleranceNotReached:
      return ErrorClass::Budget;
    case ErrorKind::DirectSumFailure:
      return ErrorClass::InvariantTrap;
    default:
      return ErrorClass::Precondition;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace hilbertlab
