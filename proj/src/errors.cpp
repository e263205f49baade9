#include "patchcontact/errors.hpp"

namespace patchcontact {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonRealRoots: return "NonRealRoots";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::DegenerateCompliance: return "DegenerateCompliance";
    case ErrorCode::PoleAtEvaluation: return "PoleAtEvaluation";
    case ErrorCode::UnresolvedWinding: return "UnresolvedWinding";
    case ErrorCode::ContourThroughZero: return "ContourThroughZero";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::DerivativeVanished: return "DerivativeVanished";
    case ErrorCode::GuardedPole: return "GuardedPole";
    case ErrorCode::NoZeroBelowTauMax: return "NoZeroBelowTauMax";
    case ErrorCode::IndexNonzero: return "IndexNonzero";
    case ErrorCode::TailUnresolved: return "TailUnresolved";
    case ErrorCode::NodeCollision: return "NodeCollision";
    case ErrorCode::OscillationUnderResolved: return "OscillationUnderResolved";
    case ErrorCode::NonPositiveTau: return "NonPositiveTau";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonRealRoots:
    case ErrorCode::DegenerateRoots:
    case ErrorCode::SingularCoupling:
    case ErrorCode::DegenerateCompliance:
    case ErrorCode::IndexNonzero:
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
      return true;
    default:
      return false;
  }
}

}  // namespace patchcontact
