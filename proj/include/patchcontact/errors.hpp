#pragma once

#include <stdexcept>
#include <string>

namespace patchcontact {

enum class ErrorCode {
  NonRealRoots,
  DegenerateRoots,
  SingularCoupling,
  DegenerateCompliance,
  PoleAtEvaluation,
  UnresolvedWinding,
  ContourThroughZero,
  QuadratureNotConverged,
  NewtonDiverged,
  DerivativeVanished,
  GuardedPole,
  NoZeroBelowTauMax,
  IndexNonzero,
  TailUnresolved,
  NodeCollision,
  OscillationUnderResolved,
  NonPositiveTau,
  MeshTooCoarse,
  SingularSystem,
  EmptyOverlap,
  ParseError,
  ValidationError,
};

const char* error_name(ErrorCode c);

// Validation-type errors map to CLI exit code 2, everything else to 3.
bool is_validation_error(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace patchcontact
