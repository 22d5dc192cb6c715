#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace galli {

enum class ErrorCode {
  SyntaxError,
  UnknownVariable,
  VarSetMismatch,
  NotDivisible,
  ResourceLimit,
  ZeroIdeal,
  NonCoordinateHypersurface,
  NotStraight,
  NotSolvable,
  BadDegree,
  HabitatMismatch,
  ZeroSingularity,
  CenterNotInSingLocus,
  ZoomNotFound,
  NotBold,
  Bold,
  Resolved,
  NonIntegralDegree,
  IllegalDescent,
  IllegalMove,
  ReplayDivergence,
  TerminationBreach,
  NotSquarefree,
  NotSmooth,
  InvalidScenario,
  InvariantBreach,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace galli
